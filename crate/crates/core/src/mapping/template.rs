use std::collections::BTreeMap;

use percent_encoding::{utf8_percent_encode, AsciiSet, NON_ALPHANUMERIC};

use super::MappingError;

/// Everything except the unreserved set `A-Za-z0-9-._~`.
const IRI_CELL: &AsciiSet = &NON_ALPHANUMERIC.remove(b'-').remove(b'.').remove(b'_').remove(b'~');

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermType {
    Iri,
    Literal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Segment {
    Text(String),
    Column(String),
}

/// A `{column}` string template; `\{` and `\}` are literal braces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Template {
    pub source: String,
    pub segments: Vec<Segment>,
}

impl Template {
    pub fn parse(pattern: &str) -> Result<Self, MappingError> {
        let mut segments = Vec::new();
        let mut text = String::new();
        let mut chars = pattern.chars();
        while let Some(c) = chars.next() {
            match c {
                '\\' => match chars.next() {
                    Some(e @ ('{' | '}' | '\\')) => text.push(e),
                    _ => return Err(MappingError::Invalid(format!("bad escape in template \"{pattern}\""))),
                },
                '{' => {
                    if !text.is_empty() {
                        segments.push(Segment::Text(std::mem::take(&mut text)));
                    }
                    let mut name = String::new();
                    loop {
                        match chars.next() {
                            Some('}') => break,
                            Some('{') | None => {
                                return Err(MappingError::Invalid(format!(
                                    "unbalanced braces in template \"{pattern}\""
                                )))
                            }
                            Some(c) => name.push(c),
                        }
                    }
                    if name.is_empty() {
                        return Err(MappingError::Invalid(format!(
                            "empty placeholder in template \"{pattern}\""
                        )));
                    }
                    segments.push(Segment::Column(name));
                }
                '}' => {
                    return Err(MappingError::Invalid(format!(
                        "unbalanced braces in template \"{pattern}\""
                    )))
                }
                c => text.push(c),
            }
        }
        if !text.is_empty() {
            segments.push(Segment::Text(text));
        }
        Ok(Self {
            source: pattern.to_string(),
            segments,
        })
    }

    pub fn columns(&self) -> impl Iterator<Item = &str> {
        self.segments.iter().filter_map(|s| match s {
            Segment::Column(c) => Some(c.as_str()),
            Segment::Text(_) => None,
        })
    }

    /// Replaces a leading `prefix:` text with its namespace.
    pub(crate) fn expand_leading_prefix(&mut self, prefixes: &crate::syntax::PrefixTable) {
        let Some(Segment::Text(first)) = self.segments.first_mut() else {
            return;
        };
        let Some(colon) = first.find(':') else { return };
        if first[colon + 1..].starts_with("//") {
            return;
        }
        if let Some(ns) = prefixes.get(&first[..colon]) {
            *first = format!("{}{}", ns.as_str(), &first[colon + 1..]);
        }
    }

    /// Substitutes cells through `lookup`; `Ok(None)` from the lookup is a
    /// NULL cell.
    pub(crate) fn expand_with<'r>(
        &self,
        term_type: TermType,
        mut lookup: impl FnMut(&str) -> Result<Option<&'r str>, MappingError>,
    ) -> Result<String, MappingError> {
        let mut out = String::new();
        for s in &self.segments {
            match s {
                Segment::Text(t) => out.push_str(t),
                Segment::Column(c) => {
                    let v = lookup(c)?.ok_or_else(|| MappingError::NullCell(c.clone()))?;
                    match term_type {
                        TermType::Iri => out.extend(utf8_percent_encode(v, IRI_CELL)),
                        TermType::Literal => out.push_str(v),
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Expands `pattern` against a row given as column → cell; empty cells are NULL.
pub fn expand_template(
    pattern: &str,
    row: &BTreeMap<String, String>,
    term_type: TermType,
) -> Result<String, MappingError> {
    Template::parse(pattern)?.expand_with(term_type, |c| match row.get(c) {
        None => Err(MappingError::UnknownColumn(c.to_string())),
        Some(v) if v.is_empty() => Ok(None),
        Some(v) => Ok(Some(v.as_str())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(cells: &[(&str, &str)]) -> BTreeMap<String, String> {
        cells.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
    }

    #[test]
    fn literal_label() {
        let r = row(&[("id", "31709"), ("typeofpublication", "Book")]);
        assert_eq!(
            expand_template("Publication {id} a fabio:{typeofpublication}", &r, TermType::Literal).unwrap(),
            "Publication 31709 a fabio:Book"
        );
    }

    #[test]
    fn iri_cells_are_percent_encoded() {
        let r = row(&[("env", "land use")]);
        assert_eq!(
            expand_template("http://example.com/base/{env}", &r, TermType::Iri).unwrap(),
            "http://example.com/base/land%20use"
        );
        let r = row(&[("x", "a/b~c-d.e_f?é")]);
        assert_eq!(
            expand_template("http://e/{x}", &r, TermType::Iri).unwrap(),
            "http://e/a%2Fb~c-d.e_f%3F%C3%A9"
        );
    }

    #[test]
    fn null_and_unknown() {
        let r = row(&[("id", "")]);
        assert!(matches!(expand_template("x{id}", &r, TermType::Iri), Err(MappingError::NullCell(c)) if c == "id"));
        assert!(matches!(
            expand_template("x{nope}", &r, TermType::Iri),
            Err(MappingError::UnknownColumn(c)) if c == "nope"
        ));
    }

    #[test]
    fn escaped_braces() {
        let t = Template::parse(r"a\{b\}{c}").unwrap();
        assert_eq!(
            t.segments,
            vec![Segment::Text("a{b}".into()), Segment::Column("c".into())]
        );
        assert!(Template::parse("a{b").is_err());
        assert!(Template::parse("a}").is_err());
    }
}
