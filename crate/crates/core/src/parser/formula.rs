//! Prefix formula syntax.

use crate::error::{FormulaError, ParseError, ParseErrorKind};
use crate::formula::{Formula, Group, GroupMode, Relation, Seeable, Term};
use crate::signature::{AgentId, Domain, Signature, Value, VarId};

use super::sexpr::{self, SExpr, Source};

/// Parses a formula written on its own, e.g. `(CB (a b) (< n 3))`.
pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    let src = Source::new(text);
    let (e, end) = sexpr::read(&src, 0)?;
    let rest = sexpr::skip_blank(text, end);
    if rest < text.len() {
        return Err(src.error(rest, ParseErrorKind::Syntax, "trailing input after formula"));
    }
    formula_from_sexpr(&src, &e, sig)
}

/// Converts an s-expression read from `src` into a validated formula.
pub fn formula_from_sexpr(src: &Source<'_>, e: &SExpr, sig: &Signature) -> Result<Formula, ParseError> {
    let f = Builder { src, sig }.formula(e, false)?;
    f.validate(sig).map_err(|err| {
        let kind = match err {
            FormulaError::BeliefUnderKnowledge => ParseErrorKind::Grammar,
            FormulaError::TypeMismatch { .. } | FormulaError::OrderingOnNonInteger { .. } => {
                ParseErrorKind::Type
            }
            _ => ParseErrorKind::Reference,
        };
        src.error(e.offset(), kind, err.to_string())
    })?;
    Ok(f)
}

/// Parses a literal for `var`: integers, `true`/`false`, or an enumeration member.
pub fn parse_constant(sig: &Signature, var: VarId, text: &str) -> Result<Value, (ParseErrorKind, String)> {
    let name = sig.var_name(var);
    match sig.domain(var) {
        Domain::Int { .. } => text
            .parse::<i64>()
            .map(Value::Int)
            .map_err(|_| (ParseErrorKind::Type, format!("`{name}` is an integer, found `{text}`"))),
        Domain::Bool => match text {
            "true" => Ok(Value::Bool(true)),
            "false" => Ok(Value::Bool(false)),
            _ => Err((ParseErrorKind::Type, format!("`{name}` is boolean, found `{text}`"))),
        },
        Domain::Enum(members) => match sig.lookup_symbol(text) {
            Some(s) if members.contains(&s) => Ok(Value::Sym(s)),
            Some(_) => Err((ParseErrorKind::Type, format!("`{text}` is not a value of `{name}`"))),
            None => Err((ParseErrorKind::Reference, format!("unknown name `{text}`"))),
        },
    }
}

struct Builder<'a, 's> {
    src: &'a Source<'s>,
    sig: &'a Signature,
}

fn group_mode(prefix: char) -> Option<GroupMode> {
    match prefix {
        'E' => Some(GroupMode::Uniform),
        'D' => Some(GroupMode::Distributed),
        'C' => Some(GroupMode::Common),
        _ => None,
    }
}

impl Builder<'_, '_> {
    fn err(&self, e: &SExpr, kind: ParseErrorKind, msg: impl Into<String>) -> ParseError {
        self.src.error(e.offset(), kind, msg)
    }

    fn formula(&self, e: &SExpr, under_knowledge: bool) -> Result<Formula, ParseError> {
        let (items, head) = match e {
            SExpr::List { items, .. } => match items.first().and_then(SExpr::as_atom) {
                Some(h) => (items, h),
                None => return Err(self.err(e, ParseErrorKind::Syntax, "expected an operator")),
            },
            SExpr::Atom { text, .. } => {
                return Err(self.err(
                    e,
                    ParseErrorKind::Syntax,
                    format!("expected a parenthesised formula, found `{text}`"),
                ))
            }
        };
        let args = &items[1..];
        let arity = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(self.err(
                    e,
                    ParseErrorKind::Syntax,
                    format!("`{head}` takes {n} arguments, found {}", args.len()),
                ))
            }
        };
        if let Some(rel) = Relation::from_symbol(head) {
            arity(2)?;
            return self.atom(rel, &args[0], &args[1]);
        }
        match head {
            "not" => {
                arity(1)?;
                Ok(Formula::not(self.formula(&args[0], under_knowledge)?))
            }
            "and" => {
                if args.is_empty() {
                    return Err(self.err(e, ParseErrorKind::Syntax, "`and` needs at least one argument"));
                }
                let parts = args
                    .iter()
                    .map(|a| self.formula(a, under_knowledge))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Formula::conjunction(parts).expect("non-empty"))
            }
            "S" => {
                arity(2)?;
                let i = self.agent(&args[0])?;
                Ok(Formula::Sees(i, self.seeable(&args[1])?))
            }
            "K" => {
                arity(2)?;
                let i = self.agent(&args[0])?;
                Ok(Formula::knows(i, self.formula(&args[1], true)?))
            }
            "B" => {
                arity(2)?;
                if under_knowledge {
                    return Err(self.grammar(e));
                }
                let i = self.agent(&args[0])?;
                Ok(Formula::believes(i, self.formula(&args[1], false)?))
            }
            _ => {
                let mut chars = head.chars();
                let (Some(m), Some(op), None) = (chars.next(), chars.next(), chars.next()) else {
                    return Err(self.unknown_op(e, head));
                };
                let Some(mode) = group_mode(m) else {
                    return Err(self.unknown_op(e, head));
                };
                arity(2)?;
                match op {
                    'S' => {
                        let g = self.group(&args[0])?;
                        Ok(Formula::GroupSees(mode, g, self.seeable(&args[1])?))
                    }
                    'K' => {
                        let g = self.group(&args[0])?;
                        Ok(Formula::group_knows(mode, g, self.formula(&args[1], true)?))
                    }
                    'B' => {
                        if under_knowledge {
                            return Err(self.grammar(e));
                        }
                        let g = self.group(&args[0])?;
                        Ok(Formula::group_believes(mode, g, self.formula(&args[1], false)?))
                    }
                    _ => Err(self.unknown_op(e, head)),
                }
            }
        }
    }

    fn grammar(&self, e: &SExpr) -> ParseError {
        self.err(
            e,
            ParseErrorKind::Grammar,
            FormulaError::BeliefUnderKnowledge.to_string(),
        )
    }

    fn unknown_op(&self, e: &SExpr, head: &str) -> ParseError {
        self.err(e, ParseErrorKind::Syntax, format!("unknown operator `{head}`"))
    }

    fn seeable(&self, e: &SExpr) -> Result<Seeable, ParseError> {
        match e {
            SExpr::Atom { .. } => Ok(Seeable::Var(self.var(e)?)),
            SExpr::List { .. } => Ok(Seeable::Formula(Box::new(self.formula(e, true)?))),
        }
    }

    fn var(&self, e: &SExpr) -> Result<VarId, ParseError> {
        let Some(name) = e.as_atom() else {
            return Err(self.err(e, ParseErrorKind::Syntax, "expected a variable name"));
        };
        self.sig
            .lookup_var(name)
            .ok_or_else(|| self.err(e, ParseErrorKind::Reference, format!("unknown variable `{name}`")))
    }

    fn agent(&self, e: &SExpr) -> Result<AgentId, ParseError> {
        let Some(name) = e.as_atom() else {
            return Err(self.err(e, ParseErrorKind::Syntax, "expected an agent name"));
        };
        self.sig
            .lookup_agent(name)
            .ok_or_else(|| self.err(e, ParseErrorKind::Reference, format!("unknown agent `{name}`")))
    }

    fn group(&self, e: &SExpr) -> Result<Group, ParseError> {
        let SExpr::List { items, .. } = e else {
            return Err(self.err(e, ParseErrorKind::Syntax, "expected a group such as `(a b)`"));
        };
        let members = items
            .iter()
            .map(|a| self.agent(a))
            .collect::<Result<Vec<_>, _>>()?;
        Group::new(members).map_err(|err| self.err(e, ParseErrorKind::Syntax, err.to_string()))
    }

    fn atom(&self, rel: Relation, lhs: &SExpr, rhs: &SExpr) -> Result<Formula, ParseError> {
        let l = self.var(lhs)?;
        let Some(text) = rhs.as_atom() else {
            return Err(self.err(rhs, ParseErrorKind::Syntax, "expected a constant or variable"));
        };
        let term = match self.sig.lookup_var(text) {
            Some(v) => Term::Var(v),
            None => Term::Const(
                parse_constant(self.sig, l, text).map_err(|(kind, msg)| self.err(rhs, kind, msg))?,
            ),
        };
        let f = Formula::atom(rel, l, term);
        f.validate(self.sig)
            .map_err(|err| self.err(rhs, ParseErrorKind::Type, err.to_string()))?;
        Ok(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        let mut b = Signature::builder();
        b.agent("a").unwrap();
        b.agent("b").unwrap();
        b.bool_var("peeking_a").unwrap();
        b.int_var("n", 0, 9).unwrap();
        b.int_var("m", 0, 9).unwrap();
        b.enum_var("sct", &["t", "f"]).unwrap();
        b.build()
    }

    #[test]
    fn common_belief_ast() {
        let sig = sig();
        let f = parse_formula("(CB (a b) (< n 3))", &sig).unwrap();
        let a = sig.lookup_agent("a").unwrap();
        let b = sig.lookup_agent("b").unwrap();
        let n = sig.lookup_var("n").unwrap();
        assert_eq!(
            f,
            Formula::group_believes(
                GroupMode::Common,
                Group::new(vec![a, b]).unwrap(),
                Formula::atom(Relation::Lt, n, Term::Const(Value::Int(3)))
            )
        );
    }

    #[test]
    fn knowledge_of_belief_rejected() {
        let err = parse_formula("(K a (B b (= n 2)))", &sig()).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Grammar);
        assert_eq!((err.line, err.col), (1, 6));
        let err = parse_formula("(DS (a b) (not (EB (a) (= n 2))))", &sig()).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Grammar);
    }

    #[test]
    fn conjunctive_goal_ast() {
        let sig = sig();
        let f = parse_formula("(and (EB (a b) (< n 2)) (not (CB (a b) (< n 2))))", &sig).unwrap();
        let g = Group::new(vec![AgentId(0), AgentId(1)]).unwrap();
        let n = sig.lookup_var("n").unwrap();
        let lt2 = Formula::atom(Relation::Lt, n, Term::Const(Value::Int(2)));
        assert_eq!(
            f,
            Formula::and(
                Formula::group_believes(GroupMode::Uniform, g.clone(), lt2.clone()),
                Formula::not(Formula::group_believes(GroupMode::Common, g, lt2))
            )
        );
    }

    #[test]
    fn error_kinds() {
        let sig = sig();
        let kind = |t: &str| parse_formula(t, &sig).unwrap_err().kind;
        assert_eq!(kind("(< peeking_a true)"), ParseErrorKind::Type);
        assert_eq!(kind("(= sct 3)"), ParseErrorKind::Reference);
        assert_eq!(kind("(= n t)"), ParseErrorKind::Type);
        assert_eq!(kind("(B z (= n 1))"), ParseErrorKind::Reference);
        assert_eq!(kind("(Q a (= n 1))"), ParseErrorKind::Syntax);
        assert_eq!(kind("(= n 1"), ParseErrorKind::Syntax);
        assert_eq!(kind("(EB () (= n 1))"), ParseErrorKind::Syntax);
        assert_eq!(kind("n"), ParseErrorKind::Syntax);
    }

    #[test]
    fn variables_on_both_sides_and_seeing() {
        let sig = sig();
        let f = parse_formula("(and (< n m) (S a n) (ES (a b) (= sct t)))", &sig).unwrap();
        assert_eq!(f.display(&sig).to_string(), "(and (and (< n m) (S a n)) (ES (a b) (= sct t)))");
    }
}
