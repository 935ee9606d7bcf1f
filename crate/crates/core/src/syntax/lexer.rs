use std::fmt;

use super::SyntaxError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    LAngle,
    RAngle,
    Comma,
    Colon,
    Dot,
    Bar,
    Lambda,
    Arrow,
    Wedge,
    Vee,
    Bottom,
    /// `^label`, a discharge label.
    Label(String),
    /// Identifier or keyword.
    Name(String),
    /// Hyphenated word such as a rule name.
    Word(String),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBracket => f.write_str("`[`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::LAngle => f.write_str("`<`"),
            Tok::RAngle => f.write_str("`>`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Bar => f.write_str("`|`"),
            Tok::Lambda => f.write_str("`\\`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Wedge => f.write_str("`/\\`"),
            Tok::Vee => f.write_str("`\\/`"),
            Tok::Bottom => f.write_str("`_|_`"),
            Tok::Label(l) => write!(f, "`^{l}`"),
            Tok::Name(n) | Tok::Word(n) => write!(f, "`{n}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, SyntaxError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let at = |i: usize| chars.get(i).copied();
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column: col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == ';' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let (tok, len) = match (c, at(i + 1), at(i + 2)) {
            ('-', Some('>'), _) => (Tok::Arrow, 2),
            ('/', Some('\\'), _) => (Tok::Wedge, 2),
            ('\\', Some('/'), _) => (Tok::Vee, 2),
            ('_', Some('|'), Some('_')) => (Tok::Bottom, 3),
            ('\\', ..) => (Tok::Lambda, 1),
            ('(', ..) => (Tok::LParen, 1),
            (')', ..) => (Tok::RParen, 1),
            ('[', ..) => (Tok::LBracket, 1),
            (']', ..) => (Tok::RBracket, 1),
            ('{', ..) => (Tok::LBrace, 1),
            ('}', ..) => (Tok::RBrace, 1),
            ('<', ..) => (Tok::LAngle, 1),
            ('>', ..) => (Tok::RAngle, 1),
            (',', ..) => (Tok::Comma, 1),
            (':', ..) => (Tok::Colon, 1),
            ('.', ..) => (Tok::Dot, 1),
            ('|', ..) => (Tok::Bar, 1),
            ('^', ..) => {
                let mut j = i + 1;
                while at(j).is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
                    j += 1;
                }
                if j == i + 1 {
                    return Err(SyntaxError::new(
                        pos,
                        vec!["a label name".into()],
                        "`^`".into(),
                    ));
                }
                (Tok::Label(chars[i + 1..j].iter().collect()), j - i)
            }
            (c, ..) if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i + 1;
                let mut hyphenated = false;
                loop {
                    match at(j) {
                        Some(c) if c.is_ascii_alphanumeric() || c == '_' => j += 1,
                        // a hyphen belongs to the word only when a letter or
                        // digit follows, so `p->q` still splits at `->`
                        Some('-') if at(j + 1).is_some_and(|c| c.is_ascii_alphanumeric()) => {
                            hyphenated = true;
                            j += 1;
                        }
                        _ => break,
                    }
                }
                while at(j) == Some('\'') {
                    j += 1;
                }
                let text: String = chars[i..j].iter().collect();
                let tok = if hyphenated {
                    Tok::Word(text)
                } else {
                    Tok::Name(text)
                };
                (tok, j - i)
            }
            (c, ..) => {
                return Err(SyntaxError::new(pos, vec![], format!("character `{c}`")));
            }
        };
        out.push(Token { tok, pos });
        i += len;
        col += len;
    }
    out.push(Token {
        tok: Tok::Eof,
        pos: Pos { line, column: col },
    });
    Ok(out)
}
