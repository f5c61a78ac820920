//! Terms over `{·, \, /, ∨, ∧, e, f}`, identities and quasi-identities, and
//! exhaustive law checking by assignment scan.

use crate::algebra::{Elem, FiniteResiduatedLattice};
use crate::{Error, Result};

/// Default variable cap for [`check_law`]; `size^k` assignments are scanned.
pub const DEFAULT_VAR_CAP: usize = 4;
/// Largest cap the CLI may request.
pub const MAX_VAR_CAP: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Var(usize),
    ConstE,
    ConstF,
    Mult(Box<Term>, Box<Term>),
    /// `a\b`
    Lres(Box<Term>, Box<Term>),
    /// `a/b`
    Rres(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
    Meet(Box<Term>, Box<Term>),
}

pub fn var(i: usize) -> Term {
    Term::Var(i)
}
pub fn e() -> Term {
    Term::ConstE
}
pub fn mult(a: Term, b: Term) -> Term {
    Term::Mult(Box::new(a), Box::new(b))
}
pub fn lres(a: Term, b: Term) -> Term {
    Term::Lres(Box::new(a), Box::new(b))
}
pub fn rres(a: Term, b: Term) -> Term {
    Term::Rres(Box::new(a), Box::new(b))
}
pub fn join(a: Term, b: Term) -> Term {
    Term::Join(Box::new(a), Box::new(b))
}
pub fn meet(a: Term, b: Term) -> Term {
    Term::Meet(Box::new(a), Box::new(b))
}
/// `t ∧ e`
pub fn neg_part(t: Term) -> Term {
    meet(t, e())
}
/// `λ_u(x) = (u\xu) ∧ e`
pub fn lam(u: Term, x: Term) -> Term {
    neg_part(lres(u.clone(), mult(x, u)))
}
/// `ρ_u(x) = (ux/u) ∧ e`
pub fn rho(u: Term, x: Term) -> Term {
    neg_part(rres(mult(u.clone(), x), u))
}
/// `λ*_u(x) = ((x\u)\u) ∧ e`
pub fn lam_star(u: Term, x: Term) -> Term {
    neg_part(lres(lres(x, u.clone()), u))
}
/// `ρ*_u(x) = (u/(u/x)) ∧ e`
pub fn rho_star(u: Term, x: Term) -> Term {
    neg_part(rres(u.clone(), rres(u, x)))
}
/// `|x| = x ∧ (e/x) ∧ e`
pub fn abs(x: Term) -> Term {
    meet(meet(x.clone(), rres(e(), x)), e())
}
/// `x^k` with `x^0 = e`.
pub fn power(x: Term, k: usize) -> Term {
    let mut acc = e();
    for _ in 0..k {
        acc = mult(acc, x.clone());
    }
    acc
}

impl Term {
    /// 1 + the largest variable index, 0 for closed terms.
    pub fn num_vars(&self) -> usize {
        match self {
            Term::Var(i) => i + 1,
            Term::ConstE | Term::ConstF => 0,
            Term::Mult(a, b)
            | Term::Lres(a, b)
            | Term::Rres(a, b)
            | Term::Join(a, b)
            | Term::Meet(a, b) => a.num_vars().max(b.num_vars()),
        }
    }

    pub fn uses_f(&self) -> bool {
        match self {
            Term::ConstF => true,
            Term::Var(_) | Term::ConstE => false,
            Term::Mult(a, b)
            | Term::Lres(a, b)
            | Term::Rres(a, b)
            | Term::Join(a, b)
            | Term::Meet(a, b) => a.uses_f() || b.uses_f(),
        }
    }

    /// Value of the term under the assignment.
    pub fn eval(&self, alg: &FiniteResiduatedLattice, assignment: &[Elem]) -> Result<Elem> {
        Ok(match self {
            Term::Var(i) => *assignment.get(*i).ok_or(Error::UnboundVariable(*i))?,
            Term::ConstE => alg.unit(),
            Term::ConstF => alg.f_const().ok_or(Error::MissingConstantF)?,
            Term::Mult(a, b) => alg.mult(a.eval(alg, assignment)?, b.eval(alg, assignment)?),
            Term::Lres(a, b) => alg.lres(a.eval(alg, assignment)?, b.eval(alg, assignment)?),
            Term::Rres(a, b) => alg.rres(a.eval(alg, assignment)?, b.eval(alg, assignment)?),
            Term::Join(a, b) => alg.join(a.eval(alg, assignment)?, b.eval(alg, assignment)?),
            Term::Meet(a, b) => alg.meet(a.eval(alg, assignment)?, b.eval(alg, assignment)?),
        })
    }

    fn fmt_prec(&self, vars: &[String], f: &mut String, prec: u8) {
        let (p, op, a, b) = match self {
            Term::Var(i) => {
                f.push_str(vars.get(*i).map(String::as_str).unwrap_or("?"));
                return;
            }
            Term::ConstE => {
                f.push('e');
                return;
            }
            Term::ConstF => {
                f.push('f');
                return;
            }
            Term::Mult(a, b) => (4, "*", a, b),
            Term::Lres(a, b) => (3, "\\", a, b),
            Term::Rres(a, b) => (3, "/", a, b),
            Term::Meet(a, b) => (2, " & ", a, b),
            Term::Join(a, b) => (1, " | ", a, b),
        };
        if p < prec {
            f.push('(');
        }
        a.fmt_prec(vars, f, p);
        f.push_str(op);
        b.fmt_prec(vars, f, p + 1);
        if p < prec {
            f.push(')');
        }
    }

    pub fn display(&self, vars: &[String]) -> String {
        let mut s = String::new();
        self.fmt_prec(vars, &mut s, 0);
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum LawKind {
    Identity,
    Inequality,
    QuasiIdentity,
}

/// An identity, inequality, or quasi-identity over [`Term`]s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Law {
    pub kind: LawKind,
    /// Equational premises; nonempty exactly for quasi-identities.
    pub premises: Vec<(Term, Term)>,
    pub conclusion: (Term, Term),
    pub name: Option<String>,
    /// Display names for variables, by index.
    pub vars: Vec<String>,
}

impl Law {
    pub fn identity(name: &str, lhs: Term, rhs: Term, vars: &[&str]) -> Law {
        Law {
            kind: LawKind::Identity,
            premises: vec![],
            conclusion: (lhs, rhs),
            name: Some(name.to_string()),
            vars: vars.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn inequality(name: &str, lhs: Term, rhs: Term, vars: &[&str]) -> Law {
        Law {
            kind: LawKind::Inequality,
            premises: vec![],
            conclusion: (lhs, rhs),
            name: Some(name.to_string()),
            vars: vars.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn quasi(name: &str, premises: Vec<(Term, Term)>, lhs: Term, rhs: Term, vars: &[&str]) -> Law {
        assert!(!premises.is_empty());
        Law {
            kind: LawKind::QuasiIdentity,
            premises,
            conclusion: (lhs, rhs),
            name: Some(name.to_string()),
            vars: vars.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn num_vars(&self) -> usize {
        let mut k = self.conclusion.0.num_vars().max(self.conclusion.1.num_vars());
        for (p, q) in &self.premises {
            k = k.max(p.num_vars()).max(q.num_vars());
        }
        k
    }

    pub fn display(&self) -> String {
        let mut s = String::new();
        for (i, (p, q)) in self.premises.iter().enumerate() {
            if i > 0 {
                s.push_str(", ");
            }
            s.push_str(&p.display(&self.vars));
            s.push_str(" = ");
            s.push_str(&q.display(&self.vars));
        }
        if !self.premises.is_empty() {
            s.push_str(" => ");
        }
        s.push_str(&self.conclusion.0.display(&self.vars));
        s.push_str(match self.kind {
            LawKind::Inequality => " <= ",
            _ => " = ",
        });
        s.push_str(&self.conclusion.1.display(&self.vars));
        s
    }
}

/// Outcome of an exhaustive law scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LawVerdict {
    Holds,
    /// Lexicographically least violating assignment, in variable-index order.
    Counterexample(Vec<Elem>),
}

impl LawVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, LawVerdict::Holds)
    }
}

/// Scans all `size^k` assignments in lexicographic order. Premises of a
/// quasi-identity filter assignments.
pub fn check_law(
    alg: &FiniteResiduatedLattice,
    law: &Law,
    max_vars_override: Option<usize>,
) -> Result<LawVerdict> {
    let cap = max_vars_override.unwrap_or(DEFAULT_VAR_CAP);
    let k = law.num_vars();
    if k > cap {
        return Err(Error::VariableCapExceeded(k, cap));
    }
    let n = alg.size();
    let mut assignment = vec![0 as Elem; k];
    'outer: loop {
        let mut applicable = true;
        for (p, q) in &law.premises {
            if p.eval(alg, &assignment)? != q.eval(alg, &assignment)? {
                applicable = false;
                break;
            }
        }
        if applicable {
            let l = law.conclusion.0.eval(alg, &assignment)?;
            let r = law.conclusion.1.eval(alg, &assignment)?;
            let ok = match law.kind {
                LawKind::Inequality => alg.le(l, r),
                _ => l == r,
            };
            if !ok {
                return Ok(LawVerdict::Counterexample(assignment));
            }
        }
        // odometer, last variable fastest
        for i in (0..k).rev() {
            assignment[i] += 1;
            if assignment[i] < n {
                continue 'outer;
            }
            assignment[i] = 0;
        }
        return Ok(LawVerdict::Holds);
    }
}

// ---------------------------------------------------------------------------
// Term / law text grammar
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Star,
    Back,
    Slash,
    Amp,
    Bar,
    LPar,
    RPar,
    Eq,
    Le,
    Comma,
    Implies,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut it = s.chars().peekable();
    while let Some(&c) = it.peek() {
        match c {
            ' ' | '\t' => {
                it.next();
            }
            '*' => {
                it.next();
                out.push(Tok::Star);
            }
            '\\' => {
                it.next();
                out.push(Tok::Back);
            }
            '/' => {
                it.next();
                out.push(Tok::Slash);
            }
            '&' => {
                it.next();
                out.push(Tok::Amp);
            }
            '|' => {
                it.next();
                out.push(Tok::Bar);
            }
            '(' => {
                it.next();
                out.push(Tok::LPar);
            }
            ')' => {
                it.next();
                out.push(Tok::RPar);
            }
            ',' => {
                it.next();
                out.push(Tok::Comma);
            }
            '<' => {
                it.next();
                if it.next() != Some('=') {
                    return Err(Error::SyntaxError(0, "expected `<=`".into()));
                }
                out.push(Tok::Le);
            }
            '=' => {
                it.next();
                if it.peek() == Some(&'>') {
                    it.next();
                    out.push(Tok::Implies);
                } else {
                    out.push(Tok::Eq);
                }
            }
            'a'..='z' => {
                let mut name = String::new();
                name.push(c);
                it.next();
                while let Some(&d) = it.peek() {
                    if d.is_ascii_digit() {
                        name.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Ident(name));
            }
            _ => return Err(Error::SyntaxError(0, format!("unexpected character `{c}`"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
    vars: Vec<String>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn atom(&mut self) -> Result<Term> {
        match self.bump() {
            Some(Tok::Ident(name)) => Ok(match name.as_str() {
                "e" => Term::ConstE,
                "f" => Term::ConstF,
                _ => {
                    let i = match self.vars.iter().position(|v| v == &name) {
                        Some(i) => i,
                        None => {
                            self.vars.push(name);
                            self.vars.len() - 1
                        }
                    };
                    Term::Var(i)
                }
            }),
            Some(Tok::LPar) => {
                let t = self.join_expr()?;
                match self.bump() {
                    Some(Tok::RPar) => Ok(t),
                    _ => Err(Error::SyntaxError(0, "expected `)`".into())),
                }
            }
            other => Err(Error::SyntaxError(0, format!("expected term, got {other:?}"))),
        }
    }

    fn mult_expr(&mut self) -> Result<Term> {
        let mut t = self.atom()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            t = mult(t, self.atom()?);
        }
        Ok(t)
    }

    fn res_expr(&mut self) -> Result<Term> {
        let mut t = self.mult_expr()?;
        loop {
            match self.peek() {
                Some(Tok::Back) => {
                    self.bump();
                    t = lres(t, self.mult_expr()?);
                }
                Some(Tok::Slash) => {
                    self.bump();
                    t = rres(t, self.mult_expr()?);
                }
                _ => return Ok(t),
            }
        }
    }

    fn meet_expr(&mut self) -> Result<Term> {
        let mut t = self.res_expr()?;
        while self.peek() == Some(&Tok::Amp) {
            self.bump();
            t = meet(t, self.res_expr()?);
        }
        Ok(t)
    }

    fn join_expr(&mut self) -> Result<Term> {
        let mut t = self.meet_expr()?;
        while self.peek() == Some(&Tok::Bar) {
            self.bump();
            t = join(t, self.meet_expr()?);
        }
        Ok(t)
    }

    /// `lhs (=|<=) rhs`
    fn equation(&mut self) -> Result<(Term, Term, bool)> {
        let l = self.join_expr()?;
        let le_op = match self.bump() {
            Some(Tok::Eq) => false,
            Some(Tok::Le) => true,
            other => return Err(Error::SyntaxError(0, format!("expected `=` or `<=`, got {other:?}"))),
        };
        let r = self.join_expr()?;
        Ok((l, r, le_op))
    }
}

/// Parses a term; variables are numbered in order of first occurrence and
/// their names returned alongside.
pub fn parse_term(src: &str) -> Result<(Term, Vec<String>)> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks: &toks, pos: 0, vars: vec![] };
    let t = p.join_expr()?;
    if p.peek().is_some() {
        return Err(Error::SyntaxError(0, "trailing input after term".into()));
    }
    Ok((t, p.vars))
}

/// Parses `lhs = rhs`, `lhs <= rhs`, or `p1 = q1, ... => lhs = rhs`.
/// Premise inequalities `p <= q` desugar to `p & q = p`.
pub fn parse_law(src: &str) -> Result<Law> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks: &toks, pos: 0, vars: vec![] };
    let mut eqs = vec![p.equation()?];
    let mut quasi = false;
    loop {
        match p.bump() {
            None => break,
            Some(Tok::Comma) => eqs.push(p.equation()?),
            Some(Tok::Implies) => {
                quasi = true;
                eqs.push(p.equation()?);
                if p.peek().is_some() {
                    return Err(Error::SyntaxError(0, "trailing input after conclusion".into()));
                }
                break;
            }
            other => return Err(Error::SyntaxError(0, format!("unexpected {other:?}"))),
        }
    }
    if !quasi && eqs.len() > 1 {
        return Err(Error::SyntaxError(0, "premises require a `=>` conclusion".into()));
    }
    let (cl, cr, cle) = eqs.pop().unwrap();
    let premises: Vec<(Term, Term)> = eqs
        .into_iter()
        .map(|(l, r, is_le)| if is_le { (meet(l.clone(), r), l) } else { (l, r) })
        .collect();
    let kind = if quasi {
        LawKind::QuasiIdentity
    } else if cle {
        LawKind::Inequality
    } else {
        LawKind::Identity
    };
    let (cl, cr) = if quasi && cle { (meet(cl.clone(), cr), cl) } else { (cl, cr) };
    Ok(Law { kind, premises, conclusion: (cl, cr), name: None, vars: p.vars })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::builtin;

    #[test]
    fn parse_and_display_roundtrip() {
        let (t, vars) = parse_term("x*y \\ (x | e) & e/y").unwrap();
        assert_eq!(vars, vec!["x".to_string(), "y".to_string()]);
        let shown = t.display(&vars);
        let (t2, _) = parse_term(&shown).unwrap();
        assert_eq!(t, t2);
    }

    #[test]
    fn eval_unit_term() {
        let alg = builtin("godel3").unwrap();
        let (t, _) = parse_term("e").unwrap();
        assert_eq!(t.eval(&alg, &[]).unwrap(), alg.unit());
    }

    #[test]
    fn abs_on_example5_integral_case() {
        // |x| = x on an integral algebra
        let alg = builtin("example5").unwrap();
        let a = alg.names().iter().position(|s| s == "a").unwrap();
        assert_eq!(abs(var(0)).eval(&alg, &[a]).unwrap(), a);
    }

    #[test]
    fn lambda_term_matches_table_conjugation() {
        let alg = builtin("example5").unwrap();
        let by = |s: &str| alg.names().iter().position(|n| n == s).unwrap();
        let (zero, a, b) = (by("0"), by("a"), by("b"));
        // λ_b(a) = (b\ab) ∧ e = 0
        assert_eq!(lam(var(1), var(0)).eval(&alg, &[a, b]).unwrap(), zero);
    }

    #[test]
    fn check_law_chain_prelinearity() {
        let alg = builtin("lukasiewicz3").unwrap();
        let law = parse_law("(x\\y & e) | (y\\x & e) = e").unwrap();
        assert!(check_law(&alg, &law, None).unwrap().holds());
    }

    #[test]
    fn quasi_identity_premises_filter() {
        // x = e => x*x = e holds in any algebra; x <= e premise desugars
        let alg = builtin("example5").unwrap();
        let law = parse_law("x = e => x*x = e").unwrap();
        assert!(check_law(&alg, &law, None).unwrap().holds());
    }

    #[test]
    fn var_cap_enforced() {
        let alg = builtin("chain2").unwrap();
        let law = parse_law("x1\\(x2\\(x3\\(x4\\x5))) = e").unwrap();
        assert_eq!(law.num_vars(), 5);
        assert!(matches!(
            check_law(&alg, &law, None),
            Err(Error::VariableCapExceeded(5, 4))
        ));
        assert!(check_law(&alg, &law, Some(5)).is_ok());
    }

    #[test]
    fn counterexample_is_lexicographically_least() {
        // x = y fails; least counterexample on any algebra with >=2 elements is (0,1)
        let alg = builtin("godel3").unwrap();
        let law = parse_law("x = y").unwrap();
        match check_law(&alg, &law, None).unwrap() {
            LawVerdict::Counterexample(a) => assert_eq!(a, vec![0, 1]),
            _ => panic!("expected counterexample"),
        }
    }

    #[test]
    fn missing_f_is_an_error() {
        let alg = builtin("godel3").unwrap();
        let (t, _) = parse_term("f").unwrap();
        assert_eq!(t.eval(&alg, &[]), Err(Error::MissingConstantF));
    }
}
