use crate::error::{ParseError, ParseErrorKind};
use crate::planner::{Domain, Goal, Problem};
use crate::state::State;
use crate::ternary::Ternary;

use super::{parse_assignments, single_name, with_agents, Cursor};

/// Parses a problem file against its domain.
pub fn parse_problem(text: &str, domain: &Domain) -> Result<Problem, ParseError> {
    let sig = &domain.sig;
    let mut cur = Cursor::new(text);
    let Some(first) = cur.next_decl() else {
        return Err(cur.error(0, ParseErrorKind::Syntax, "expected `problem NAME`"));
    };
    if first.keyword.text != "problem" {
        return Err(cur.error(first.keyword.offset, ParseErrorKind::Syntax, "expected `problem NAME`"));
    }
    let name = single_name(&cur, &first)?.text.to_string();
    let mut init = with_agents(sig, State::empty(sig.num_vars()));
    let mut goals = Vec::new();
    let mut max_depth = None;

    while let Some(decl) = cur.next_decl() {
        match decl.keyword.text {
            "domain" => {
                let d = single_name(&cur, &decl)?;
                if d.text != domain.name {
                    return Err(cur.error(
                        d.offset,
                        ParseErrorKind::Reference,
                        format!("problem is for domain `{}`, not `{}`", d.text, domain.name),
                    ));
                }
            }
            "init" => parse_assignments(&cur, sig, decl.rest, &mut init)?,
            "goal" => {
                let toks = cur.tokens(decl.rest);
                let Some(target) = toks.first() else {
                    return Err(cur.error(decl.keyword.offset, ParseErrorKind::Syntax, "expected `goal TARGET FORMULA`"));
                };
                let target = match target.text {
                    "true" => Ternary::True,
                    "false" => Ternary::False,
                    "unknown" => Ternary::Unknown,
                    other => {
                        return Err(cur.error(
                            target.offset,
                            ParseErrorKind::Syntax,
                            format!("goal target must be true, false or unknown, found `{other}`"),
                        ))
                    }
                };
                let rest = (toks[0].offset + toks[0].text.len(), decl.rest.1);
                let formula = cur.formula(rest, sig)?;
                goals.push(Goal { formula, target });
            }
            "max-depth" => {
                let t = single_name(&cur, &decl)?;
                max_depth = Some(
                    t.text
                        .parse()
                        .map_err(|_| cur.error(t.offset, ParseErrorKind::Syntax, "expected a depth"))?,
                );
            }
            other => {
                return Err(cur.error(
                    decl.keyword.offset,
                    ParseErrorKind::Syntax,
                    format!("unknown declaration `{other}`"),
                ))
            }
        }
    }
    if let Some(v) = sig.vars().find(|v| !init.contains(*v)) {
        return Err(cur.error(
            first.keyword.offset,
            ParseErrorKind::Reference,
            format!("initial state does not assign `{}`", sig.var_name(v)),
        ));
    }
    if goals.is_empty() {
        return Err(cur.error(cur.eof(), ParseErrorKind::Syntax, "problem has no goal"));
    }
    Ok(Problem {
        name,
        init,
        goals,
        max_depth,
    })
}
