use std::sync::Arc;

use crate::error::{ParseError, ParseErrorKind};
use crate::observation::{build_model, GuardedModel, ObservationModel, Visibility};
use crate::planner::{Action, Domain, Effect, EffectExpr};
use crate::signature::{AgentId, Signature, SignatureBuilder, VarId};

use super::{comma_groups, parse_constant, single_name, Cursor, Decl, Tok};

enum Sig {
    Building(SignatureBuilder),
    Done(Signature),
}

struct SeeRule<'s> {
    agents: Tok<'s>,
    vars: Tok<'s>,
    guard: Vec<Vec<[Tok<'s>; 2]>>,
}

/// Parses a domain file.
pub fn parse_domain(text: &str) -> Result<Domain, ParseError> {
    let mut cur = Cursor::new(text);
    let Some(first) = cur.next_decl() else {
        return Err(cur.error(0, ParseErrorKind::Syntax, "expected `domain NAME`"));
    };
    if first.keyword.text != "domain" {
        return Err(cur.error(first.keyword.offset, ParseErrorKind::Syntax, "expected `domain NAME`"));
    }
    let name = single_name(&cur, &first)?.text.to_string();

    let mut sig = Sig::Building(Signature::builder());
    let mut observation: Option<Tok<'_>> = None;
    let mut see_rules: Vec<SeeRule<'_>> = Vec::new();
    let mut actions: Vec<Action> = Vec::new();

    while let Some(decl) = cur.next_decl() {
        match decl.keyword.text {
            "agents" | "var" => {
                let Sig::Building(b) = &mut sig else {
                    return Err(cur.error(
                        decl.keyword.offset,
                        ParseErrorKind::Syntax,
                        "agents and variables must be declared before observations and actions",
                    ));
                };
                if decl.keyword.text == "agents" {
                    let toks = cur.tokens(decl.rest);
                    if toks.is_empty() {
                        return Err(cur.error(decl.keyword.offset, ParseErrorKind::Syntax, "expected agent names"));
                    }
                    for t in toks {
                        b.agent(t.text)
                            .map_err(|e| cur.error(t.offset, ParseErrorKind::Reference, e.to_string()))?;
                    }
                } else {
                    var_decl(&cur, &decl, b)?;
                }
            }
            "observation" => {
                finish(&mut sig);
                if observation.is_some() {
                    return Err(cur.error(decl.keyword.offset, ParseErrorKind::Syntax, "observation declared twice"));
                }
                observation = Some(single_name(&cur, &decl)?);
            }
            "see" => {
                finish(&mut sig);
                see_rules.push(see_decl(&cur, &decl)?);
            }
            "action" => {
                let sig = finish(&mut sig);
                let action_name = single_name(&cur, &decl)?;
                if actions.iter().any(|a| a.name == action_name.text) {
                    return Err(cur.error(
                        action_name.offset,
                        ParseErrorKind::Reference,
                        format!("action `{}` defined twice", action_name.text),
                    ));
                }
                let action = action_body(&mut cur, sig, action_name)?;
                actions.push(action);
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

    let sig = finish(&mut sig).clone();
    let Some(obs) = observation else {
        return Err(cur.error(cur.eof(), ParseErrorKind::Syntax, "missing `observation` declaration"));
    };
    let model: Arc<dyn ObservationModel> = if obs.text == "guarded" {
        Arc::new(guarded(&cur, &sig, &name, &see_rules)?)
    } else {
        if let Some(r) = see_rules.first() {
            return Err(cur.error(
                r.agents.offset,
                ParseErrorKind::Syntax,
                "`see` rules need `observation guarded`",
            ));
        }
        build_model(obs.text, &sig).map_err(|e| cur.error(obs.offset, ParseErrorKind::Reference, e.to_string()))?
    };
    Ok(Domain {
        name,
        sig,
        model,
        actions,
    })
}

fn finish(sig: &mut Sig) -> &Signature {
    if let Sig::Building(b) = sig {
        let b = std::mem::take(b);
        *sig = Sig::Done(b.build());
    }
    match sig {
        Sig::Done(s) => s,
        Sig::Building(_) => unreachable!(),
    }
}

fn var_decl(cur: &Cursor<'_>, decl: &Decl<'_>, b: &mut SignatureBuilder) -> Result<(), ParseError> {
    let toks = cur.tokens(decl.rest);
    let syntax = |at: usize| {
        cur.error(
            at,
            ParseErrorKind::Syntax,
            "expected `var NAME : bool | int LO..HI | enum VALUE...`",
        )
    };
    let (name, colon, ty, args) = match toks.as_slice() {
        [name, colon, ty, args @ ..] => (name, colon, ty, args),
        _ => return Err(syntax(decl.keyword.offset)),
    };
    if colon.text != ":" {
        return Err(syntax(colon.offset));
    }
    let result = match (ty.text, args) {
        ("bool", []) => b.bool_var(name.text),
        ("int", [range]) => {
            let (lo, hi) = range
                .text
                .split_once("..")
                .and_then(|(l, h)| Some((l.parse::<i64>().ok()?, h.parse::<i64>().ok()?)))
                .ok_or_else(|| cur.error(range.offset, ParseErrorKind::Syntax, "expected a range `LO..HI`"))?;
            b.int_var(name.text, lo, hi)
        }
        ("enum", members) if !members.is_empty() => {
            let names: Vec<&str> = members.iter().map(|t| t.text).collect();
            b.enum_var(name.text, &names)
        }
        _ => return Err(syntax(ty.offset)),
    };
    result.map(|_| ()).map_err(|e| cur.error(name.offset, ParseErrorKind::Reference, e.to_string()))
}

fn see_decl<'s>(cur: &Cursor<'s>, decl: &Decl<'s>) -> Result<SeeRule<'s>, ParseError> {
    let toks = cur.tokens(decl.rest);
    let (agents, vars, rest) = match toks.as_slice() {
        [a, v, rest @ ..] => (a.clone(), v.clone(), rest),
        _ => {
            return Err(cur.error(
                decl.keyword.offset,
                ParseErrorKind::Syntax,
                "expected `see AGENT VARIABLE [when GUARD]`",
            ))
        }
    };
    let mut guard = Vec::new();
    if let Some((when, lits)) = rest.split_first() {
        if when.text != "when" {
            return Err(cur.error(when.offset, ParseErrorKind::Syntax, "expected `when`"));
        }
        for disjunct in lits.split(|t| t.text == "or") {
            let mut conj = Vec::new();
            for lit in disjunct.split(|t| t.text == "and") {
                match lit {
                    [v, eq, c] if eq.text == "=" => conj.push([v.clone(), c.clone()]),
                    _ => {
                        let at = lit.first().map(|t| t.offset).unwrap_or(when.offset);
                        return Err(cur.error(at, ParseErrorKind::Syntax, "expected `VARIABLE = VALUE`"));
                    }
                }
            }
            guard.push(conj);
        }
    }
    Ok(SeeRule { agents, vars, guard })
}

fn guarded(cur: &Cursor<'_>, sig: &Signature, name: &str, rules: &[SeeRule<'_>]) -> Result<GuardedModel, ParseError> {
    let mut b = GuardedModel::builder(name, sig);
    for r in rules {
        let agents: Vec<AgentId> = if r.agents.text == "*" {
            sig.agents().collect()
        } else {
            vec![sig.lookup_agent(r.agents.text).ok_or_else(|| {
                cur.error(r.agents.offset, ParseErrorKind::Reference, format!("unknown agent `{}`", r.agents.text))
            })?]
        };
        let vars: Vec<VarId> = if r.vars.text == "*" {
            sig.vars().collect()
        } else {
            vec![lookup_var(cur, sig, &r.vars)?]
        };
        let rule = if r.guard.is_empty() {
            Visibility::Always
        } else {
            let mut dnf = Vec::new();
            for conj in &r.guard {
                let mut lits = Vec::new();
                for [v, c] in conj {
                    let var = lookup_var(cur, sig, v)?;
                    let value = parse_constant(sig, var, c.text).map_err(|(k, m)| cur.error(c.offset, k, m))?;
                    lits.push((var, value));
                }
                dnf.push(lits);
            }
            Visibility::When(dnf)
        };
        for &a in &agents {
            for &v in &vars {
                b.set(a, v, rule.clone());
            }
        }
    }
    b.build().map_err(|e| {
        let at = rules.first().map(|r| r.agents.offset).unwrap_or(0);
        cur.error(at, ParseErrorKind::Reference, e.to_string())
    })
}

fn lookup_var(cur: &Cursor<'_>, sig: &Signature, t: &Tok<'_>) -> Result<VarId, ParseError> {
    sig.lookup_var(t.text)
        .ok_or_else(|| cur.error(t.offset, ParseErrorKind::Reference, format!("unknown variable `{}`", t.text)))
}

fn action_body(cur: &mut Cursor<'_>, sig: &Signature, name: Tok<'_>) -> Result<Action, ParseError> {
    let mut action = Action {
        name: name.text.to_string(),
        precondition: None,
        effects: Vec::new(),
    };
    loop {
        let Some(decl) = cur.next_decl() else {
            return Err(cur.error(name.offset, ParseErrorKind::Syntax, format!("action `{}` lacks `end`", name.text)));
        };
        match decl.keyword.text {
            "pre" => {
                if action.precondition.is_some() {
                    return Err(cur.error(decl.keyword.offset, ParseErrorKind::Syntax, "precondition given twice"));
                }
                action.precondition = Some(cur.formula(decl.rest, sig)?);
            }
            "eff" => {
                for group in comma_groups(cur.src.text(), decl.rest.0, decl.rest.1) {
                    action.effects.push(effect(cur, sig, group)?);
                }
            }
            "end" => {
                if let Some(t) = cur.tokens(decl.rest).first() {
                    return Err(cur.error(t.offset, ParseErrorKind::Syntax, "unexpected text after `end`"));
                }
                return Ok(action);
            }
            other => {
                return Err(cur.error(
                    decl.keyword.offset,
                    ParseErrorKind::Syntax,
                    format!("expected `pre`, `eff` or `end`, found `{other}`"),
                ))
            }
        }
    }
}

fn effect(cur: &Cursor<'_>, sig: &Signature, range: (usize, usize)) -> Result<Effect, ParseError> {
    let toks = cur.tokens(range);
    let [var, op, rhs] = toks.as_slice() else {
        let at = toks.first().map(|t| t.offset).unwrap_or(range.0);
        return Err(cur.error(at, ParseErrorKind::Syntax, "expected `VARIABLE := VALUE`, `+= K` or `-= K`"));
    };
    let v = lookup_var(cur, sig, var)?;
    if sig.var(v).agent.is_some() {
        return Err(cur.error(var.offset, ParseErrorKind::Type, "agent variables cannot be changed"));
    }
    let expr = match op.text {
        ":=" => match sig.lookup_var(rhs.text) {
            Some(src) => {
                if sig.domain(src).value_type() != sig.domain(v).value_type() {
                    return Err(cur.error(rhs.offset, ParseErrorKind::Type, "copy between variables of different types"));
                }
                EffectExpr::Copy(src)
            }
            None => EffectExpr::Const(parse_constant(sig, v, rhs.text).map_err(|(k, m)| cur.error(rhs.offset, k, m))?),
        },
        "+=" | "-=" => {
            if sig.domain(v).value_type() != crate::signature::ValueType::Int {
                return Err(cur.error(op.offset, ParseErrorKind::Type, format!("`{}` needs an integer variable", op.text)));
            }
            let k: i64 = rhs
                .text
                .parse()
                .map_err(|_| cur.error(rhs.offset, ParseErrorKind::Type, "expected an integer step"))?;
            EffectExpr::Add(if op.text == "+=" { k } else { -k })
        }
        _ => return Err(cur.error(op.offset, ParseErrorKind::Syntax, "expected `:=`, `+=` or `-=`")),
    };
    Ok(Effect { var: v, expr })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::State;

    const TOY: &str = "\
domain toy
agents a b
var p : bool
var n : int 0..3
observation guarded
see * p
see a n when p = true
action flip   # toggles p
  pre (and (= p false)
           (< n 3))
  eff p := true, n += 1
end
";

    #[test]
    fn parses_guarded_domain() {
        let d = parse_domain(TOY).unwrap();
        assert_eq!(d.name, "toy");
        assert_eq!(d.actions.len(), 1);
        let a = &d.actions[0];
        assert_eq!(a.effects.len(), 2);
        let p = d.sig.lookup_var("p").unwrap();
        let n = d.sig.lookup_var("n").unwrap();
        let s = State::empty(d.sig.num_vars())
            .with(p, crate::signature::Value::Bool(true))
            .with(n, crate::signature::Value::Int(1));
        assert!(d.model.sees(AgentId(0), &s, n));
        assert!(!d.model.sees(AgentId(1), &s, n));
    }

    #[test]
    fn reports_positions() {
        let bad = TOY.replace("n += 1", "m += 1");
        let err = parse_domain(&bad).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Reference);
        assert_eq!(err.line, 11);
        assert_eq!(err.col, 18);

        let err = parse_domain("domain x\nagents a\nvar n : int 3..1\nobservation number\n").unwrap_err();
        assert_eq!((err.line, err.kind), (3, ParseErrorKind::Reference));

        let err = parse_domain("domain x\nobservation nowhere\n").unwrap_err();
        assert_eq!((err.line, err.col), (2, 13));

        let err = parse_domain("domain x\naction a\n pre (= n 1)\nend\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Reference);

        let err = parse_domain("domain x\nagents a\nvar n : int 0..2\nobservation guarded\naction a\n eff n += 1\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Syntax);
    }
}
