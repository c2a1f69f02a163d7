//! The pattern dialect: anchors `^` `$`, classes `\s` `\d`, the `+`
//! quantifier, `.` and backslash-escaped punctuation. Matching is an
//! unanchored search unless anchors say otherwise.

#[derive(Debug, Clone, PartialEq, Eq)]
enum Atom {
    Char(char),
    Any,
    Space,
    Digit,
}

impl Atom {
    fn matches(&self, c: char) -> bool {
        match self {
            Atom::Char(x) => *x == c,
            Atom::Any => c != '\n' && c != '\r',
            Atom::Space => c.is_whitespace(),
            Atom::Digit => c.is_ascii_digit(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Piece {
    atom: Atom,
    repeat: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    source: String,
    start_anchor: bool,
    end_anchor: bool,
    pieces: Vec<Piece>,
}

impl Pattern {
    /// Compiles `source`; the error names the first unsupported construct.
    pub fn compile(source: &str) -> Result<Self, String> {
        let chars: Vec<char> = source.chars().collect();
        let mut i = 0;
        let start_anchor = chars.first() == Some(&'^');
        if start_anchor {
            i = 1;
        }
        let mut pieces: Vec<Piece> = Vec::new();
        let mut end_anchor = false;
        while i < chars.len() {
            let c = chars[i];
            let atom = match c {
                '$' if i == chars.len() - 1 => {
                    end_anchor = true;
                    i += 1;
                    continue;
                }
                '+' => {
                    match pieces.last_mut() {
                        Some(p) if !p.repeat => p.repeat = true,
                        _ => return Err(format!("misplaced '+' at offset {i}")),
                    }
                    i += 1;
                    continue;
                }
                '.' => Atom::Any,
                '\\' => {
                    i += 1;
                    match chars.get(i) {
                        Some('s') => Atom::Space,
                        Some('d') => Atom::Digit,
                        Some(&e) if e.is_ascii_punctuation() => Atom::Char(e),
                        Some(e) => return Err(format!("unsupported escape '\\{e}'")),
                        None => return Err("trailing backslash".into()),
                    }
                }
                '*' | '?' | '{' | '}' | '(' | ')' | '[' | ']' | '|' | '^' | '$' => {
                    return Err(format!("unsupported construct '{c}' at offset {i}"))
                }
                other => Atom::Char(other),
            };
            pieces.push(Piece { atom, repeat: false });
            i += 1;
        }
        Ok(Self {
            source: source.to_string(),
            start_anchor,
            end_anchor,
            pieces,
        })
    }

    pub fn as_str(&self) -> &str {
        &self.source
    }

    pub fn is_match(&self, text: &str) -> bool {
        let chars: Vec<char> = text.chars().collect();
        let last_start = if self.start_anchor { 0 } else { chars.len() };
        (0..=last_start).any(|s| self.match_at(&chars, s, 0))
    }

    fn match_at(&self, text: &[char], pos: usize, piece: usize) -> bool {
        let Some(p) = self.pieces.get(piece) else {
            return !self.end_anchor || pos == text.len();
        };
        if !p.repeat {
            return pos < text.len() && p.atom.matches(text[pos]) && self.match_at(text, pos + 1, piece + 1);
        }
        let mut end = pos;
        while end < text.len() && p.atom.matches(text[end]) {
            end += 1;
        }
        // greedy, at least one repetition
        (pos + 1..=end).rev().any(|e| self.match_at(text, e, piece + 1))
    }
}
