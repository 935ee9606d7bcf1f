use std::collections::BTreeMap;
use std::fmt;

use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::formula::Formula;
use crate::term::Var;

/// Finite map from variables to formulas: one formula per variable.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Context {
    bindings: BTreeMap<Var, Formula>,
}

/// A variable bound at two different formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clash {
    pub var: Var,
    pub first: Formula,
    pub second: Formula,
}

impl Context {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, x: &Var) -> Option<&Formula> {
        self.bindings.get(x)
    }

    pub fn contains(&self, x: &Var) -> bool {
        self.bindings.contains_key(x)
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Formula)> {
        self.bindings.iter()
    }

    pub fn vars(&self) -> impl Iterator<Item = &Var> {
        self.bindings.keys()
    }

    /// Binds `x` to `a`, replacing any previous binding (shadowing).
    pub fn extended(&self, x: Var, a: Formula) -> Context {
        let mut out = self.clone();
        out.bindings.insert(x, a);
        out
    }

    /// Adds `x : a`; succeeds if `x` is unbound or already bound to `a`.
    pub fn insert(&mut self, x: Var, a: Formula) -> Result<(), Clash> {
        match self.bindings.get(&x) {
            Some(prev) if *prev != a => Err(Clash {
                var: x,
                first: prev.clone(),
                second: a,
            }),
            Some(_) => Ok(()),
            None => {
                self.bindings.insert(x, a);
                Ok(())
            }
        }
    }

    pub fn remove(&mut self, x: &Var) -> Option<Formula> {
        self.bindings.remove(x)
    }

    pub fn without(&self, x: &Var) -> Context {
        let mut out = self.clone();
        out.bindings.remove(x);
        out
    }

    /// Set-union of two contexts; fails if a variable is bound differently.
    pub fn union(&self, other: &Context) -> Result<Context, Clash> {
        let mut out = self.clone();
        for (x, a) in other.iter() {
            out.insert(x.clone(), a.clone())?;
        }
        Ok(out)
    }
}

impl FromIterator<(Var, Formula)> for Context {
    fn from_iter<I: IntoIterator<Item = (Var, Formula)>>(iter: I) -> Self {
        Context {
            bindings: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (x, a)) in self.bindings.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}:{a}")?;
        }
        Ok(())
    }
}

/// Serialized as a JSON object from variable names to rendered formulas.
impl Serialize for Context {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.len()))?;
        for (x, a) in self.iter() {
            map.serialize_entry(x.name(), &a.to_string())?;
        }
        map.end()
    }
}
