//! Text formats for domains, problems, traces and formulae.

mod domain;
mod formula;
mod problem;
pub mod sexpr;
mod trace;

pub use domain::parse_domain;
pub use formula::{formula_from_sexpr, parse_constant, parse_formula};
pub use problem::parse_problem;
pub use trace::{parse_trace, ReplayError, Trace, TraceBody};

use crate::error::{ParseError, ParseErrorKind};
use crate::signature::Signature;
use crate::state::State;
use sexpr::{SExpr, Source};

/// A whitespace-separated word and its byte offset.
#[derive(Clone, Debug)]
pub(crate) struct Tok<'s> {
    pub text: &'s str,
    pub offset: usize,
}

/// One declaration: its keyword and the remainder of the line.
pub(crate) struct Decl<'s> {
    pub keyword: Tok<'s>,
    /// Byte range after the keyword up to the end of the line or comment.
    pub rest: (usize, usize),
}

/// Walks a text one declaration line at a time. Formulae may continue on
/// following lines until their parentheses balance.
pub(crate) struct Cursor<'s> {
    pub src: Source<'s>,
    line: usize,
}

impl<'s> Cursor<'s> {
    pub fn new(text: &'s str) -> Self {
        Cursor {
            src: Source::new(text),
            line: 0,
        }
    }

    fn content_end(&self, start: usize, end: usize) -> usize {
        let text = self.src.text();
        text[start..end].find('#').map(|k| start + k).unwrap_or(end)
    }

    pub fn next_decl(&mut self) -> Option<Decl<'s>> {
        let text = self.src.text();
        while self.line < self.src.num_lines() {
            let (start, end) = self.src.line_range(self.line);
            self.line += 1;
            let end = self.content_end(start, end);
            let Some(kw) = tokens(text, start, end).into_iter().next() else {
                continue;
            };
            let rest = (kw.offset + kw.text.len(), end);
            return Some(Decl { keyword: kw, rest });
        }
        None
    }

    pub fn tokens(&self, range: (usize, usize)) -> Vec<Tok<'s>> {
        tokens(self.src.text(), range.0, range.1)
    }

    /// Reads a formula starting in `range`, possibly spanning lines, and
    /// moves the cursor past its last line.
    pub fn formula(&mut self, range: (usize, usize), sig: &Signature) -> Result<crate::formula::Formula, ParseError> {
        let (e, end) = self.sexpr(range)?;
        formula::formula_from_sexpr(&self.src, &e, sig)
            .and_then(|f| self.finish_line(end).map(|_| f))
    }

    pub fn sexpr(&mut self, range: (usize, usize)) -> Result<(SExpr, usize), ParseError> {
        let Some(first) = self.tokens(range).into_iter().next() else {
            return Err(self.src.error(range.0, ParseErrorKind::Syntax, "expected a formula"));
        };
        sexpr::read(&self.src, first.offset)
    }

    /// Requires the line holding `end` to have nothing after `end`.
    fn finish_line(&mut self, end: usize) -> Result<(), ParseError> {
        let line = self.src.line_of(end.min(self.src.text().len()));
        let (_, line_end) = self.src.line_range(line);
        let stop = self.content_end(end.min(line_end), line_end);
        if let Some(t) = tokens(self.src.text(), end.min(line_end), stop).first() {
            return Err(self.src.error(t.offset, ParseErrorKind::Syntax, format!("unexpected `{}`", t.text)));
        }
        self.line = line + 1;
        Ok(())
    }

    pub fn error(&self, offset: usize, kind: ParseErrorKind, msg: impl Into<String>) -> ParseError {
        self.src.error(offset, kind, msg)
    }

    /// Offset of the end of the text, for errors about missing content.
    pub fn eof(&self) -> usize {
        self.src.text().len()
    }
}

pub(crate) fn tokens(text: &str, start: usize, end: usize) -> Vec<Tok<'_>> {
    let mut out = Vec::new();
    let mut i = start;
    let slice = &text[start..end];
    for word in slice.split_whitespace() {
        let k = text[i..end].find(word).expect("word from slice") + i;
        out.push(Tok {
            text: &text[k..k + word.len()],
            offset: k,
        });
        i = k + word.len();
    }
    out
}

/// Splits a byte range on commas.
pub(crate) fn comma_groups(text: &str, start: usize, end: usize) -> Vec<(usize, usize)> {
    let mut groups = Vec::new();
    let mut from = start;
    for (k, c) in text[start..end].char_indices() {
        if c == ',' {
            groups.push((from, start + k));
            from = start + k + 1;
        }
    }
    groups.push((from, end));
    groups
}

/// Parses `x = v, y = w` into `state`, checking names and domains.
pub(crate) fn parse_assignments(
    cur: &Cursor<'_>,
    sig: &Signature,
    range: (usize, usize),
    state: &mut State,
) -> Result<(), ParseError> {
    for group in comma_groups(cur.src.text(), range.0, range.1) {
        let toks = cur.tokens(group);
        let [var, eq, value] = toks.as_slice() else {
            let at = toks.first().map(|t| t.offset).unwrap_or(group.0);
            return Err(cur.error(at, ParseErrorKind::Syntax, "expected `variable = value`"));
        };
        if eq.text != "=" {
            return Err(cur.error(eq.offset, ParseErrorKind::Syntax, "expected `=`"));
        }
        let v = sig.lookup_var(var.text).ok_or_else(|| {
            cur.error(var.offset, ParseErrorKind::Reference, format!("unknown variable `{}`", var.text))
        })?;
        let c = parse_constant(sig, v, value.text).map_err(|(k, m)| cur.error(value.offset, k, m))?;
        if !sig.domain(v).contains(c) {
            return Err(cur.error(
                value.offset,
                ParseErrorKind::Type,
                format!("`{}` is outside the domain of `{}`", value.text, var.text),
            ));
        }
        state.set(v, c);
    }
    Ok(())
}

/// Assigns every agent variable its own name.
pub(crate) fn with_agents(sig: &Signature, mut state: State) -> State {
    for a in sig.agents() {
        let v = sig.agent_var(a);
        let name = sig.lookup_symbol(sig.agent_name(a)).expect("agents are interned");
        state.set(v, crate::signature::Value::Sym(name));
    }
    state
}

/// Parses `keyword NAME` with exactly one argument.
pub(crate) fn single_name<'s>(cur: &Cursor<'s>, decl: &Decl<'s>) -> Result<Tok<'s>, ParseError> {
    let toks = cur.tokens(decl.rest);
    match toks.as_slice() {
        [name] => Ok(name.clone()),
        _ => Err(cur.error(
            decl.keyword.offset,
            ParseErrorKind::Syntax,
            format!("`{}` takes exactly one name", decl.keyword.text),
        )),
    }
}
