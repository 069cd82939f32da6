//! S-expressions with source positions.

use crate::error::{ParseError, ParseErrorKind};

/// Maps byte offsets of a text to 1-based line and column numbers.
#[derive(Debug)]
pub struct Source<'a> {
    text: &'a str,
    line_starts: Vec<usize>,
}

impl<'a> Source<'a> {
    pub fn new(text: &'a str) -> Self {
        let mut line_starts = vec![0];
        line_starts.extend(text.match_indices('\n').map(|(i, _)| i + 1));
        Source { text, line_starts }
    }

    pub fn text(&self) -> &'a str {
        self.text
    }

    pub fn num_lines(&self) -> usize {
        self.line_starts.len()
    }

    /// Byte range of line `idx` (0-based), without the newline.
    pub fn line_range(&self, idx: usize) -> (usize, usize) {
        let start = self.line_starts[idx];
        let end = self
            .line_starts
            .get(idx + 1)
            .map(|e| e - 1)
            .unwrap_or(self.text.len());
        (start, end)
    }

    /// Index of the line containing `offset`.
    pub fn line_of(&self, offset: usize) -> usize {
        match self.line_starts.binary_search(&offset) {
            Ok(i) => i,
            Err(i) => i - 1,
        }
    }

    pub fn pos(&self, offset: usize) -> (usize, usize) {
        let line = self.line_of(offset);
        let col = self.text[self.line_starts[line]..offset].chars().count() + 1;
        (line + 1, col)
    }

    pub fn error(&self, offset: usize, kind: ParseErrorKind, msg: impl Into<String>) -> ParseError {
        let (line, col) = self.pos(offset);
        ParseError::new(line, col, kind, msg)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SExpr {
    Atom { text: String, offset: usize },
    List { items: Vec<SExpr>, offset: usize },
}

impl SExpr {
    pub fn offset(&self) -> usize {
        match self {
            SExpr::Atom { offset, .. } | SExpr::List { offset, .. } => *offset,
        }
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            SExpr::Atom { text, .. } => Some(text),
            SExpr::List { .. } => None,
        }
    }
}

fn is_atom_char(c: char) -> bool {
    !c.is_whitespace() && c != '(' && c != ')' && c != '#'
}

/// Reads one s-expression starting at byte `start`, skipping leading blanks
/// and `#` comments. Returns it with the offset just past its end.
pub fn read(src: &Source<'_>, start: usize) -> Result<(SExpr, usize), ParseError> {
    let text = src.text();
    let mut i = skip_blank(text, start);
    let Some(c) = text[i..].chars().next() else {
        return Err(src.error(i, ParseErrorKind::Syntax, "expected an expression"));
    };
    if c == ')' {
        return Err(src.error(i, ParseErrorKind::Syntax, "unexpected `)`"));
    }
    if c != '(' {
        let end = atom_end(text, i);
        if end == i {
            return Err(src.error(i, ParseErrorKind::Lexical, format!("unexpected character `{c}`")));
        }
        return Ok((
            SExpr::Atom {
                text: text[i..end].to_string(),
                offset: i,
            },
            end,
        ));
    }
    let open = i;
    i += 1;
    let mut items = Vec::new();
    loop {
        i = skip_blank(text, i);
        match text[i..].chars().next() {
            None => {
                return Err(src.error(open, ParseErrorKind::Syntax, "unbalanced `(`"));
            }
            Some(')') => {
                return Ok((SExpr::List { items, offset: open }, i + 1));
            }
            Some(_) => {
                let (item, next) = read(src, i)?;
                items.push(item);
                i = next;
            }
        }
    }
}

fn atom_end(text: &str, start: usize) -> usize {
    text[start..]
        .char_indices()
        .find(|&(_, c)| !is_atom_char(c))
        .map(|(k, _)| start + k)
        .unwrap_or(text.len())
}

/// Skips whitespace and comments.
pub fn skip_blank(text: &str, mut i: usize) -> usize {
    loop {
        let rest = &text[i..];
        let trimmed = rest.trim_start();
        i += rest.len() - trimmed.len();
        if trimmed.starts_with('#') {
            i += trimmed.find('\n').unwrap_or(trimmed.len());
        } else {
            return i;
        }
    }
}

/// Parses `text` as exactly one s-expression.
pub fn parse(text: &str) -> Result<SExpr, ParseError> {
    let src = Source::new(text);
    let (e, end) = read(&src, 0)?;
    let rest = skip_blank(text, end);
    if rest < text.len() {
        return Err(src.error(rest, ParseErrorKind::Syntax, "trailing input after expression"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_lists_with_positions() {
        let e = parse("(CB (a b)\n  (< n 3))").unwrap();
        let SExpr::List { items, .. } = &e else {
            panic!("expected list")
        };
        assert_eq!(items.len(), 3);
        let src = Source::new("(CB (a b)\n  (< n 3))");
        assert_eq!(src.pos(items[2].offset()), (2, 3));
    }

    #[test]
    fn unbalanced_reports_open_paren() {
        let err = parse("  (and (= x 1)").unwrap_err();
        assert_eq!((err.line, err.col), (1, 3));
        assert_eq!(err.kind, ParseErrorKind::Syntax);
        assert!(parse(")").is_err());
        assert!(parse("(a) b").is_err());
    }

    #[test]
    fn comments_are_blank() {
        let e = parse("# heading\n(a # note\n b)").unwrap();
        let SExpr::List { items, .. } = e else {
            panic!()
        };
        assert_eq!(items.len(), 2);
    }
}
