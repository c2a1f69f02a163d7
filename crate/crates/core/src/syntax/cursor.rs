//! Character-level scanning shared by the Turtle/TriG and SPARQL parsers.

use super::ParseError;
use crate::rdf::vocab::xsd;

pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

pub(crate) enum NumericToken {
    Integer(String),
    Decimal(String),
    Double(String),
}

impl NumericToken {
    pub(crate) fn into_parts(self) -> (String, &'static str) {
        match self {
            NumericToken::Integer(s) => (s, xsd::INTEGER),
            NumericToken::Decimal(s) => (s, xsd::DECIMAL),
            NumericToken::Double(s) => (s, xsd::DOUBLE),
        }
    }
}

pub(crate) fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '-' || c == '\u{B7}'
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Self { src, pos: 0 }
    }

    pub(crate) fn pos(&self) -> usize {
        self.pos
    }

    /// Rewinds to a position previously returned by `pos`.
    pub(crate) fn set_pos(&mut self, pos: usize) {
        self.pos = pos;
    }

    pub(crate) fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    pub(crate) fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    pub(crate) fn peek_nth(&self, n: usize) -> Option<char> {
        self.rest().chars().nth(n)
    }

    pub(crate) fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub(crate) fn eat_str(&mut self, s: &str) -> bool {
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    pub(crate) fn skip_ws(&mut self) {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('#') => {
                    while let Some(c) = self.bump() {
                        if c == '\n' {
                            break;
                        }
                    }
                }
                _ => break,
            }
        }
    }

    /// Case-insensitive keyword match that requires a word boundary.
    pub(crate) fn peek_keyword(&self, kw: &str) -> bool {
        let rest = self.rest();
        if rest.len() < kw.len() || !rest.is_char_boundary(kw.len()) {
            return false;
        }
        if !rest[..kw.len()].eq_ignore_ascii_case(kw) {
            return false;
        }
        !matches!(rest[kw.len()..].chars().next(), Some(c) if is_name_char(c) || c == ':')
    }

    pub(crate) fn eat_keyword(&mut self, kw: &str) -> bool {
        if self.peek_keyword(kw) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    pub(crate) fn error_at(&self, pos: usize, message: impl Into<String>) -> ParseError {
        ParseError::at(self.src, pos, message)
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> ParseError {
        self.error_at(self.pos, message)
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("'{c}'")))
        }
    }

    pub(crate) fn unexpected(&self, wanted: &str) -> ParseError {
        match self.peek() {
            None => self.error(format!("unexpected end of input, expected {wanted}")),
            Some(c) => self.error(format!("unexpected '{c}', expected {wanted}")),
        }
    }

    /// `<...>` with `\u`/`\U` escapes; returns the raw (unresolved) reference.
    pub(crate) fn read_iriref(&mut self) -> Result<String, ParseError> {
        let start = self.pos;
        self.expect('<')?;
        let mut out = String::new();
        loop {
            match self.bump() {
                None => return Err(self.error_at(start, "unterminated IRI")),
                Some('>') => return Ok(out),
                Some('\\') => out.push(self.read_unicode_escape()?),
                Some(c) if c.is_whitespace() => {
                    return Err(self.error_at(self.pos - c.len_utf8(), "whitespace inside IRI"))
                }
                Some(c @ ('<' | '"' | '{' | '}' | '|' | '^' | '`')) => {
                    return Err(self.error_at(self.pos - 1, format!("illegal character '{c}' in IRI")))
                }
                Some(c) => out.push(c),
            }
        }
    }

    fn read_unicode_escape(&mut self) -> Result<char, ParseError> {
        let at = self.pos;
        let len = match self.bump() {
            Some('u') => 4,
            Some('U') => 8,
            _ => return Err(self.error_at(at, "invalid escape sequence")),
        };
        let mut code = 0u32;
        for _ in 0..len {
            let d = self
                .bump()
                .and_then(|c| c.to_digit(16))
                .ok_or_else(|| self.error_at(at, "invalid unicode escape"))?;
            code = code * 16 + d;
        }
        char::from_u32(code).ok_or_else(|| self.error_at(at, "invalid unicode code point"))
    }

    /// Prefix part of a prefixed name, without the colon. Empty for `:local`.
    pub(crate) fn read_pname_prefix(&mut self) -> Option<String> {
        let start = self.pos;
        let mut out = String::new();
        if let Some(c) = self.peek() {
            if c.is_alphabetic() {
                out.push(c);
                self.bump();
                while let Some(c) = self.peek() {
                    if is_name_char(c) || (c == '.' && matches!(self.peek_nth(1), Some(n) if is_name_char(n))) {
                        out.push(c);
                        self.bump();
                    } else {
                        break;
                    }
                }
            }
        }
        if self.eat(':') {
            Some(out)
        } else {
            self.pos = start;
            None
        }
    }

    /// Local part of a prefixed name (after the colon), escapes resolved.
    pub(crate) fn read_pname_local(&mut self) -> Result<String, ParseError> {
        let mut out = String::new();
        let mut first = true;
        while let Some(c) = self.peek() {
            if is_name_char(c) || c == ':' || (first && c.is_ascii_digit()) {
                out.push(c);
                self.bump();
            } else if c == '.' && !first {
                match self.peek_nth(1) {
                    Some(n) if is_name_char(n) || n == ':' || n == '%' || n == '\\' => {
                        out.push(c);
                        self.bump();
                    }
                    _ => break,
                }
            } else if c == '%' {
                let at = self.pos;
                self.bump();
                let h1 = self.bump().filter(char::is_ascii_hexdigit);
                let h2 = self.bump().filter(char::is_ascii_hexdigit);
                match (h1, h2) {
                    (Some(a), Some(b)) => {
                        out.push('%');
                        out.push(a);
                        out.push(b);
                    }
                    _ => return Err(self.error_at(at, "invalid percent escape in local name")),
                }
            } else if c == '\\' {
                let at = self.pos;
                self.bump();
                match self.bump() {
                    Some(e) if "_~.-!$&'()*+,;=/?#@%".contains(e) => out.push(e),
                    _ => return Err(self.error_at(at, "invalid escape in local name")),
                }
            } else {
                break;
            }
            first = false;
        }
        Ok(out)
    }

    /// A blank node label after `_:`.
    pub(crate) fn read_bnode_label(&mut self) -> Result<String, ParseError> {
        let start = self.pos;
        if !self.eat_str("_:") {
            return Err(self.unexpected("blank node label"));
        }
        let mut out = String::new();
        while let Some(c) = self.peek() {
            if is_name_char(c) || (c == '.' && matches!(self.peek_nth(1), Some(n) if is_name_char(n))) {
                out.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if out.is_empty() {
            return Err(self.error_at(start, "empty blank node label"));
        }
        Ok(out)
    }

    /// Any of the four Turtle string forms, escapes resolved.
    pub(crate) fn read_string(&mut self) -> Result<String, ParseError> {
        let start = self.pos;
        let quote = match self.peek() {
            Some(q @ ('"' | '\'')) => q,
            _ => return Err(self.unexpected("string literal")),
        };
        let triple: String = std::iter::repeat_n(quote, 3).collect();
        let long = self.rest().starts_with(&triple);
        if long {
            self.pos += 3;
        } else {
            self.bump();
        }
        let mut out = String::new();
        loop {
            if long && self.rest().starts_with(&triple) {
                // a long string may end with up to two extra quotes
                let mut extra = 0;
                while self.rest()[3..].starts_with(quote) && extra < 2 {
                    out.push(quote);
                    self.bump();
                    extra += 1;
                }
                self.pos += 3;
                return Ok(out);
            }
            match self.bump() {
                None => return Err(self.error_at(start, "unterminated string literal")),
                Some(c) if c == quote && !long => return Ok(out),
                Some('\n' | '\r') if !long => {
                    return Err(self.error_at(self.pos - 1, "line break in short string literal"))
                }
                Some('\\') => {
                    let at = self.pos;
                    let c = match self.peek() {
                        Some('t') => '\t',
                        Some('n') => '\n',
                        Some('r') => '\r',
                        Some('b') => '\u{08}',
                        Some('f') => '\u{0C}',
                        Some('"') => '"',
                        Some('\'') => '\'',
                        Some('\\') => '\\',
                        Some('u' | 'U') => {
                            out.push(self.read_unicode_escape()?);
                            continue;
                        }
                        _ => return Err(self.error_at(at, "invalid escape sequence")),
                    };
                    self.bump();
                    out.push(c);
                }
                Some(c) => out.push(c),
            }
        }
    }

    pub(crate) fn read_lang_tag(&mut self) -> Result<String, ParseError> {
        let start = self.pos;
        self.expect('@')?;
        let mut out = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '-' {
                out.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if !crate::rdf::term_valid_language_tag(&out) {
            return Err(self.error_at(start, format!("invalid language tag '{out}'")));
        }
        Ok(out)
    }

    pub(crate) fn at_number_start(&self) -> bool {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => true,
            Some('+' | '-') => {
                matches!(self.peek_nth(1), Some(c) if c.is_ascii_digit())
                    || (self.peek_nth(1) == Some('.') && matches!(self.peek_nth(2), Some(c) if c.is_ascii_digit()))
            }
            Some('.') => matches!(self.peek_nth(1), Some(c) if c.is_ascii_digit()),
            _ => false,
        }
    }

    pub(crate) fn read_number(&mut self) -> Result<NumericToken, ParseError> {
        let mut out = String::new();
        if let Some(c @ ('+' | '-')) = self.peek() {
            out.push(c);
            self.bump();
        }
        let mut digits = 0;
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            out.push(c);
            self.bump();
            digits += 1;
        }
        let mut decimal = false;
        if self.peek() == Some('.') && matches!(self.peek_nth(1), Some(c) if c.is_ascii_digit()) {
            decimal = true;
            out.push('.');
            self.bump();
            while let Some(c) = self.peek().filter(char::is_ascii_digit) {
                out.push(c);
                self.bump();
                digits += 1;
            }
        }
        if digits == 0 {
            return Err(self.unexpected("number"));
        }
        if let Some(e @ ('e' | 'E')) = self.peek() {
            let save = self.pos;
            let mut exp = String::from(e);
            self.bump();
            if let Some(s @ ('+' | '-')) = self.peek() {
                exp.push(s);
                self.bump();
            }
            let mut exp_digits = 0;
            while let Some(c) = self.peek().filter(char::is_ascii_digit) {
                exp.push(c);
                self.bump();
                exp_digits += 1;
            }
            if exp_digits > 0 {
                out.push_str(&exp);
                return Ok(NumericToken::Double(out));
            }
            self.pos = save;
        }
        Ok(if decimal {
            NumericToken::Decimal(out)
        } else {
            NumericToken::Integer(out)
        })
    }
}

/// Resolves an IRI reference against a base (no dot-segment removal).
pub(crate) fn resolve_iri(base: Option<&str>, reference: &str) -> Option<String> {
    if crate::rdf::term_has_scheme(reference) {
        return Some(reference.to_string());
    }
    let base = base?;
    if reference.is_empty() {
        return Some(base.split('#').next().unwrap_or(base).to_string());
    }
    if reference.starts_with('#') {
        let stem = base.split('#').next().unwrap_or(base);
        return Some(format!("{stem}{reference}"));
    }
    let scheme_end = base.find(':')?;
    if let Some(rest) = reference.strip_prefix("//") {
        return Some(format!("{}//{}", &base[..=scheme_end], rest));
    }
    let stem = base.split(['#', '?']).next().unwrap_or(base);
    if reference.starts_with('/') {
        // scheme://authority + absolute path
        let after = &stem[scheme_end + 1..];
        let authority_end = if let Some(a) = after.strip_prefix("//") {
            scheme_end + 3 + a.find('/').unwrap_or(a.len())
        } else {
            scheme_end + 1
        };
        return Some(format!("{}{}", &stem[..authority_end], reference));
    }
    if reference.starts_with('?') {
        return Some(format!("{stem}{reference}"));
    }
    let dir_end = stem.rfind('/').map(|i| i + 1).unwrap_or(stem.len());
    Some(format!("{}{}", &stem[..dir_end], reference))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolves_relative_references() {
        let base = Some("http://example.com/base/mapping.ttl");
        assert_eq!(
            resolve_iri(base, "#Publication_id").unwrap(),
            "http://example.com/base/mapping.ttl#Publication_id"
        );
        assert_eq!(resolve_iri(base, "other").unwrap(), "http://example.com/base/other");
        assert_eq!(resolve_iri(base, "/x").unwrap(), "http://example.com/x");
        assert_eq!(resolve_iri(None, "#x"), None);
        assert_eq!(resolve_iri(None, "urn:a").unwrap(), "urn:a");
    }

    #[test]
    fn long_string_with_inner_quotes() {
        let mut c = Cursor::new(r#""""a "b" """"#);
        assert_eq!(c.read_string().unwrap(), r#"a "b" "#);
        assert!(c.at_end());
    }

    #[test]
    fn numbers() {
        let mut c = Cursor::new("12.5e3 ");
        assert!(matches!(c.read_number().unwrap(), NumericToken::Double(s) if s == "12.5e3"));
        let mut c = Cursor::new("7.");
        assert!(matches!(c.read_number().unwrap(), NumericToken::Integer(s) if s == "7"));
        assert_eq!(c.rest(), ".");
    }

    #[test]
    fn keyword_boundary() {
        let c = Cursor::new("prefix:foo");
        assert!(!c.peek_keyword("PREFIX"));
        let c = Cursor::new("PREFIX ex:");
        assert!(c.peek_keyword("prefix"));
    }
}
