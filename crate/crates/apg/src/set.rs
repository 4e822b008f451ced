//! Hereditarily finite well-founded set terms in canonical form.

use std::fmt;

use crate::error::{Error, Result};

type Chars<'a> = std::iter::Peekable<std::str::CharIndices<'a>>;

/// A hereditarily finite set. Elements are kept sorted and deduplicated,
/// so two terms denote the same set exactly when they compare equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetLiteral {
    elements: Vec<SetLiteral>,
}

impl SetLiteral {
    pub fn empty() -> Self {
        SetLiteral::default()
    }

    pub fn new(mut elements: Vec<SetLiteral>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        SetLiteral { elements }
    }

    pub fn singleton(element: SetLiteral) -> Self {
        SetLiteral {
            elements: vec![element],
        }
    }

    pub fn elements(&self) -> &[SetLiteral] {
        &self.elements
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// 0 for the empty set, otherwise 1 + max rank of the elements.
    pub fn rank(&self) -> usize {
        self.elements.iter().map(|e| e.rank() + 1).max().unwrap_or(0)
    }

    /// Parses the braces form, e.g. `{}`, `{{},{{}}}`. Whitespace between
    /// tokens is ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut chars = text.char_indices().peekable();
        let value = parse_braced(text, &mut chars)?;
        for (i, c) in chars {
            if !c.is_whitespace() {
                return Err(literal_err(text, i));
            }
        }
        Ok(value)
    }
}

fn parse_braced(text: &str, chars: &mut Chars) -> Result<SetLiteral> {
    skip_ws(chars);
    match chars.next() {
        Some((_, '{')) => {}
        Some((i, _)) => return Err(literal_err(text, i)),
        None => return Err(literal_err(text, text.len())),
    }
    let mut elements = Vec::new();
    loop {
        skip_ws(chars);
        match chars.peek().copied() {
            Some((_, '}')) => {
                chars.next();
                return Ok(SetLiteral::new(elements));
            }
            Some((_, '{')) => {
                elements.push(parse_braced(text, chars)?);
                skip_ws(chars);
                match chars.peek().copied() {
                    Some((_, ',')) => {
                        chars.next();
                    }
                    Some((_, '}')) => {}
                    Some((i, _)) => return Err(literal_err(text, i)),
                    None => return Err(literal_err(text, text.len())),
                }
            }
            Some((i, _)) => return Err(literal_err(text, i)),
            None => return Err(literal_err(text, text.len())),
        }
    }
}

fn skip_ws(chars: &mut Chars) {
    while matches!(chars.peek(), Some((_, c)) if c.is_whitespace()) {
        chars.next();
    }
}

fn literal_err(text: &str, at: usize) -> Error {
    Error::Syntax {
        line: 1,
        msg: format!("malformed set literal `{text}` at byte {at}"),
    }
}

impl fmt::Display for SetLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_dedups_and_sorts() {
        let e = SetLiteral::empty();
        let se = SetLiteral::singleton(e.clone());
        let a = SetLiteral::new(vec![se.clone(), e.clone(), se.clone()]);
        let b = SetLiteral::new(vec![e, se]);
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "{{},{{}}}");
    }

    #[test]
    fn rank() {
        let e = SetLiteral::empty();
        assert_eq!(e.rank(), 0);
        let se = SetLiteral::singleton(e.clone());
        assert_eq!(se.rank(), 1);
        assert_eq!(SetLiteral::new(vec![e, se]).rank(), 2);
    }

    #[test]
    fn parse_round_trip() {
        for text in ["{}", "{{}}", "{{},{{}}}", "{{{}},{{},{{}}}}"] {
            let v = SetLiteral::parse(text).unwrap();
            assert_eq!(v.to_string(), text);
        }
    }

    #[test]
    fn parse_with_spaces() {
        let v = SetLiteral::parse("{ {}, {{}} }").unwrap();
        assert_eq!(v.to_string(), "{{},{{}}}");
    }

    #[test]
    fn parse_rejects_garbage() {
        for text in ["", "{", "}", "{}}", "{,}", "{{}", "x", "{x}"] {
            assert!(SetLiteral::parse(text).is_err(), "accepted {text:?}");
        }
    }
}
