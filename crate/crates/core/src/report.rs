//! Serialization helpers shared by the JSON reports.

use std::fmt::Display;

use serde::Serializer;

/// Serializes a value through its `Display` rendering.
pub fn display<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}
