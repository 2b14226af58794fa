//! Piecewise-linear expressions over named rational parameters.
//!
//! A [`PwlExpr`] is a tree of min/max/positive-part/sum/scale nodes over
//! affine forms. Besides exact evaluation, [`branches`] splits a parameter
//! domain into cells on which the expression is a single affine form.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::ratgeom::{linalg, GeomError, HPoly, Halfspace, QVec, Rat};

pub type Env = BTreeMap<String, Rat>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PwlError {
    #[error("parameter `{0}` has no value")]
    MissingParameter(String),
    #[error("{0} node has no children")]
    EmptyNode(&'static str),
    #[error("branch certificate failed at {point}: expression {expr} but cell form {form}")]
    Certificate { point: String, expr: String, form: String },
    #[error(transparent)]
    Geom(#[from] GeomError),
}

pub type Result<T> = std::result::Result<T, PwlError>;

/// Builds an environment from `(name, value)` pairs.
pub fn env<'a>(pairs: impl IntoIterator<Item = (&'a str, Rat)>) -> Env {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineForm {
    #[serde(default)]
    terms: BTreeMap<String, Rat>,
    #[serde(default)]
    constant: Rat,
}

impl AffineForm {
    pub fn constant(c: Rat) -> AffineForm {
        AffineForm { terms: BTreeMap::new(), constant: c }
    }

    pub fn var(name: &str) -> AffineForm {
        AffineForm::term(name, Rat::one())
    }

    pub fn term(name: &str, c: Rat) -> AffineForm {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(name.to_string(), c);
        }
        AffineForm { terms, constant: Rat::zero() }
    }

    pub fn terms(&self) -> &BTreeMap<String, Rat> {
        &self.terms
    }

    pub fn constant_term(&self) -> &Rat {
        &self.constant
    }

    pub fn coeff(&self, name: &str) -> Rat {
        self.terms.get(name).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &AffineForm) -> AffineForm {
        let mut terms = self.terms.clone();
        for (k, v) in &o.terms {
            let e = terms.entry(k.clone()).or_insert_with(Rat::zero);
            *e += v;
            if e.is_zero() {
                terms.remove(k);
            }
        }
        AffineForm { terms, constant: &self.constant + &o.constant }
    }

    pub fn scale(&self, k: &Rat) -> AffineForm {
        if k.is_zero() {
            return AffineForm::default();
        }
        AffineForm {
            terms: self.terms.iter().map(|(n, v)| (n.clone(), v * k)).collect(),
            constant: &self.constant * k,
        }
    }

    pub fn sub(&self, o: &AffineForm) -> AffineForm {
        self.add(&o.scale(&Rat::int(-1)))
    }

    pub fn eval(&self, env: &Env) -> Result<Rat> {
        let mut acc = self.constant.clone();
        for (k, v) in &self.terms {
            let x = env.get(k).ok_or_else(|| PwlError::MissingParameter(k.clone()))?;
            acc += v * x;
        }
        Ok(acc)
    }

    /// Coefficient row over `params` (in order) and the constant.
    pub fn to_row(&self, params: &[&str]) -> Result<(QVec, Rat)> {
        if let Some(k) = self.terms.keys().find(|k| !params.contains(&k.as_str())) {
            return Err(PwlError::MissingParameter(k.clone()));
        }
        let row = params.iter().map(|p| self.coeff(p)).collect();
        Ok((row, self.constant.clone()))
    }

    /// The halfspace `self ≥ 0` over `params`.
    pub fn nonneg(&self, params: &[&str]) -> Result<Halfspace> {
        let (row, c) = self.to_row(params)?;
        Ok(Halfspace::new(row, -c))
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, v) in &self.terms {
            let (sign, mag) = if v.is_negative() { ("-", -v) } else { ("+", v.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mag == Rat::one() {
                write!(f, "{k}")?;
            } else {
                write!(f, "{mag}*{k}")?;
            }
            first = false;
        }
        if first {
            write!(f, "{}", self.constant)
        } else if self.constant.is_negative() {
            write!(f, " - {}", -&self.constant)
        } else if self.constant.is_positive() {
            write!(f, " + {}", self.constant)
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum PwlExpr {
    Affine(AffineForm),
    Min { args: Vec<PwlExpr> },
    Max { args: Vec<PwlExpr> },
    Pos { arg: Box<PwlExpr> },
    Sum { args: Vec<PwlExpr> },
    Scale { factor: Rat, arg: Box<PwlExpr> },
}

pub fn var(name: &str) -> PwlExpr {
    PwlExpr::Affine(AffineForm::var(name))
}

pub fn cst(c: Rat) -> PwlExpr {
    PwlExpr::Affine(AffineForm::constant(c))
}

pub fn min(args: Vec<PwlExpr>) -> PwlExpr {
    assert!(!args.is_empty(), "min of nothing");
    PwlExpr::Min { args }
}

pub fn max(args: Vec<PwlExpr>) -> PwlExpr {
    assert!(!args.is_empty(), "max of nothing");
    PwlExpr::Max { args }
}

pub fn pos(arg: PwlExpr) -> PwlExpr {
    PwlExpr::Pos { arg: Box::new(arg) }
}

impl PwlExpr {
    pub fn eval(&self, env: &Env) -> Result<Rat> {
        match self {
            PwlExpr::Affine(a) => a.eval(env),
            PwlExpr::Min { args } => fold(args, env, "min", |a, b| Rat::min(&a, &b)),
            PwlExpr::Max { args } => fold(args, env, "max", |a, b| Rat::max(&a, &b)),
            PwlExpr::Sum { args } => fold(args, env, "sum", |a, b| a + b),
            PwlExpr::Pos { arg } => Ok(arg.eval(env)?.pos()),
            PwlExpr::Scale { factor, arg } => Ok(factor * &arg.eval(env)?),
        }
    }

    /// Rejects empty min/max/sum nodes anywhere in the tree.
    pub fn validate(&self) -> Result<()> {
        match self {
            PwlExpr::Affine(_) => Ok(()),
            PwlExpr::Min { args } | PwlExpr::Max { args } | PwlExpr::Sum { args } => {
                if args.is_empty() {
                    return Err(PwlError::EmptyNode(self.op_name()));
                }
                args.iter().try_for_each(PwlExpr::validate)
            }
            PwlExpr::Pos { arg } | PwlExpr::Scale { arg, .. } => arg.validate(),
        }
    }

    fn op_name(&self) -> &'static str {
        match self {
            PwlExpr::Affine(_) => "affine",
            PwlExpr::Min { .. } => "min",
            PwlExpr::Max { .. } => "max",
            PwlExpr::Pos { .. } => "pos",
            PwlExpr::Sum { .. } => "sum",
            PwlExpr::Scale { .. } => "scale",
        }
    }

    pub fn params(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_params(&mut out);
        out
    }

    fn collect_params(&self, out: &mut BTreeSet<String>) {
        match self {
            PwlExpr::Affine(a) => out.extend(a.terms.keys().cloned()),
            PwlExpr::Min { args } | PwlExpr::Max { args } | PwlExpr::Sum { args } => {
                args.iter().for_each(|a| a.collect_params(out))
            }
            PwlExpr::Pos { arg } | PwlExpr::Scale { arg, .. } => arg.collect_params(out),
        }
    }

    /// Replaces the parameter `name` by `by` everywhere.
    pub fn substitute(&self, name: &str, by: &PwlExpr) -> PwlExpr {
        match self {
            PwlExpr::Affine(a) => {
                let c = a.coeff(name);
                if c.is_zero() {
                    return self.clone();
                }
                let mut rest = a.clone();
                rest.terms.remove(name);
                PwlExpr::Affine(rest) + by.clone() * c
            }
            PwlExpr::Min { args } => PwlExpr::Min { args: args.iter().map(|a| a.substitute(name, by)).collect() },
            PwlExpr::Max { args } => PwlExpr::Max { args: args.iter().map(|a| a.substitute(name, by)).collect() },
            PwlExpr::Sum { args } => PwlExpr::Sum { args: args.iter().map(|a| a.substitute(name, by)).collect() },
            PwlExpr::Pos { arg } => pos(arg.substitute(name, by)),
            PwlExpr::Scale { factor, arg } => {
                PwlExpr::Scale { factor: factor.clone(), arg: Box::new(arg.substitute(name, by)) }
            }
        }
    }

    /// Substitutes several parameters, in order.
    pub fn substitute_all<'a>(&self, subs: impl IntoIterator<Item = (&'a str, &'a PwlExpr)>) -> PwlExpr {
        subs.into_iter().fold(self.clone(), |e, (n, by)| e.substitute(n, by))
    }
}

fn fold(args: &[PwlExpr], env: &Env, op: &'static str, f: impl Fn(Rat, Rat) -> Rat) -> Result<Rat> {
    let (first, rest) = args.split_first().ok_or(PwlError::EmptyNode(op))?;
    let mut acc = first.eval(env)?;
    for a in rest {
        acc = f(acc, a.eval(env)?);
    }
    Ok(acc)
}

impl fmt::Display for PwlExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, name: &str, args: &[PwlExpr], sep: &str| {
            write!(f, "{name}(")?;
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    write!(f, "{sep}")?;
                }
                write!(f, "{a}")?;
            }
            write!(f, ")")
        };
        match self {
            PwlExpr::Affine(a) => write!(f, "{a}"),
            PwlExpr::Min { args } => list(f, "min", args, ", "),
            PwlExpr::Max { args } => list(f, "max", args, ", "),
            PwlExpr::Sum { args } => list(f, "", args, " + "),
            PwlExpr::Pos { arg } => write!(f, "pos({arg})"),
            PwlExpr::Scale { factor, arg } => write!(f, "{factor}*({arg})"),
        }
    }
}

impl Add for PwlExpr {
    type Output = PwlExpr;
    fn add(self, o: PwlExpr) -> PwlExpr {
        match (self, o) {
            (PwlExpr::Affine(a), PwlExpr::Affine(b)) => PwlExpr::Affine(a.add(&b)),
            (PwlExpr::Sum { mut args }, PwlExpr::Sum { args: more }) => {
                args.extend(more);
                PwlExpr::Sum { args }
            }
            (PwlExpr::Sum { mut args }, x) | (x, PwlExpr::Sum { mut args }) => {
                args.push(x);
                PwlExpr::Sum { args }
            }
            (a, b) => PwlExpr::Sum { args: vec![a, b] },
        }
    }
}

impl Mul<Rat> for PwlExpr {
    type Output = PwlExpr;
    fn mul(self, k: Rat) -> PwlExpr {
        match self {
            PwlExpr::Affine(a) => PwlExpr::Affine(a.scale(&k)),
            PwlExpr::Scale { factor, arg } => PwlExpr::Scale { factor: factor * k, arg },
            e => PwlExpr::Scale { factor: k, arg: Box::new(e) },
        }
    }
}

impl Neg for PwlExpr {
    type Output = PwlExpr;
    fn neg(self) -> PwlExpr {
        self * Rat::int(-1)
    }
}

impl Sub for PwlExpr {
    type Output = PwlExpr;
    fn sub(self, o: PwlExpr) -> PwlExpr {
        self + (-o)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse expression at byte {pos}: {msg}")]
pub struct ParsePwlError {
    pub pos: usize,
    pub msg: String,
}

/// Text syntax: rational literals, identifiers, `+ - * /`, parentheses and
/// `min(..)`, `max(..)`, `pos(..)`. Products and quotients need a constant
/// side, so the result stays piecewise linear.
impl FromStr for PwlExpr {
    type Err = ParsePwlError;
    fn from_str(s: &str) -> std::result::Result<PwlExpr, ParsePwlError> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> ParsePwlError {
        ParsePwlError { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> std::result::Result<PwlExpr, ParsePwlError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc + self.term()?;
            } else if self.eat(b'-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> std::result::Result<PwlExpr, ParsePwlError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                let at = self.pos;
                let rhs = self.unary()?;
                acc = match (as_const(&acc), as_const(&rhs)) {
                    (Some(k), _) => rhs * k,
                    (_, Some(k)) => acc * k,
                    _ => return Err(ParsePwlError { pos: at, msg: "product of two non-constants".into() }),
                };
            } else if self.eat(b'/') {
                let at = self.pos;
                let rhs = self.unary()?;
                match as_const(&rhs) {
                    Some(k) if !k.is_zero() => acc = acc * k.recip(),
                    _ => return Err(ParsePwlError { pos: at, msg: "divisor must be a nonzero constant".into() }),
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> std::result::Result<PwlExpr, ParsePwlError> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        self.atom()
    }

    fn atom(&mut self) -> std::result::Result<PwlExpr, ParsePwlError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).map_err(|_| self.err("bad digits"))?;
                let n: num_bigint::BigInt = digits.parse().map_err(|_| self.err("bad integer"))?;
                Ok(cst(Rat::from_bigints(n, 1.into()).expect("unit denominator")))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).map_err(|_| self.err("bad name"))?.to_string();
                if !matches!(name.as_str(), "min" | "max" | "pos") || self.peek() != Some(b'(') {
                    return Ok(var(&name));
                }
                self.pos += 1;
                let mut args = vec![self.expr()?];
                while self.eat(b',') {
                    args.push(self.expr()?);
                }
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(match name.as_str() {
                    "min" => PwlExpr::Min { args },
                    "max" => PwlExpr::Max { args },
                    _ if args.len() == 1 => pos(args.pop().expect("one argument")),
                    _ => return Err(self.err("pos takes one argument")),
                })
            }
            _ => Err(self.err("expected a number, name or `(`")),
        }
    }
}

fn as_const(e: &PwlExpr) -> Option<Rat> {
    match e {
        PwlExpr::Affine(a) if a.is_constant() => Some(a.constant_term().clone()),
        _ => None,
    }
}

/// A domain cell on which the expression equals one affine form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchCell {
    pub active_form: AffineForm,
    pub guard: HPoly,
}

/// A domain cell on which each of several expressions is affine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiCell {
    pub forms: Vec<AffineForm>,
    pub guard: HPoly,
}

/// Splits `domain` (over `params`, in order) into full-dimensional cells with
/// disjoint interiors on which `expr` is affine. Every cell is certified at
/// its centroid and at all its vertices.
pub fn branches(expr: &PwlExpr, params: &[&str], domain: &HPoly) -> Result<Vec<BranchCell>> {
    Ok(common_branches(std::slice::from_ref(expr), params, domain)?
        .into_iter()
        .map(|c| BranchCell { active_form: c.forms.into_iter().next().unwrap_or_default(), guard: c.guard })
        .collect())
}

/// Common refinement of the branch decompositions of several expressions.
pub fn common_branches(exprs: &[PwlExpr], params: &[&str], domain: &HPoly) -> Result<Vec<MultiCell>> {
    let splitter = Splitter { params };
    let start = splitter.clean(domain)?.ok_or(PwlError::Geom(GeomError::Empty))?;
    let mut cells: Vec<(Vec<AffineForm>, HPoly)> = vec![(vec![], start)];
    for e in exprs {
        let mut next = Vec::new();
        for (forms, g) in cells {
            for (f, g2) in splitter.cells(e, g)? {
                let mut fs = forms.clone();
                fs.push(f);
                next.push((fs, g2));
            }
        }
        cells = next;
    }
    let out: Vec<MultiCell> = cells.into_iter().map(|(forms, guard)| MultiCell { forms, guard }).collect();
    for c in &out {
        certify(exprs, &c.forms, &c.guard, params)?;
    }
    Ok(out)
}

fn certify(exprs: &[PwlExpr], forms: &[AffineForm], guard: &HPoly, params: &[&str]) -> Result<()> {
    let v = guard.to_v()?;
    let n = Rat::new(1, v.vertices().len() as i64);
    let centroid = v.vertices().iter().fold(QVec::zeros(params.len()), |a, p| a.add(p)).scale(&n);
    for p in v.vertices().iter().chain(std::iter::once(&centroid)) {
        let en: Env = params.iter().zip(p.iter()).map(|(k, x)| (k.to_string(), x.clone())).collect();
        for (e, f) in exprs.iter().zip(forms) {
            let a = e.eval(&en)?;
            let b = f.eval(&en)?;
            if a != b {
                return Err(PwlError::Certificate { point: p.to_string(), expr: a.to_string(), form: b.to_string() });
            }
        }
    }
    Ok(())
}

struct Splitter<'a> {
    params: &'a [&'a str],
}

impl Splitter<'_> {
    /// Irredundant form of a guard, or `None` if it is not full-dimensional.
    fn clean(&self, g: &HPoly) -> Result<Option<HPoly>> {
        let v = match g.to_v() {
            Ok(v) => v,
            Err(GeomError::Infeasible) => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let pts: Vec<&QVec> = v.vertices().iter().collect();
        if !v.rays().is_empty() || linalg::affine_rank(&pts) != Some(self.params.len()) {
            return Ok(None);
        }
        Ok(Some(v.to_h()?))
    }

    fn cells(&self, e: &PwlExpr, g: HPoly) -> Result<Vec<(AffineForm, HPoly)>> {
        match e {
            PwlExpr::Affine(a) => Ok(vec![(a.clone(), g)]),
            PwlExpr::Scale { factor, arg } => {
                Ok(self.cells(arg, g)?.into_iter().map(|(f, g)| (f.scale(factor), g)).collect())
            }
            PwlExpr::Sum { args } => {
                let mut acc = vec![(AffineForm::default(), g)];
                for a in args {
                    let mut next = Vec::new();
                    for (f, g) in acc {
                        for (fa, ga) in self.cells(a, g)? {
                            next.push((f.add(&fa), ga));
                        }
                    }
                    acc = next;
                }
                Ok(acc)
            }
            PwlExpr::Min { args } => self.extremum(args, g, true),
            PwlExpr::Max { args } => self.extremum(args, g, false),
            PwlExpr::Pos { arg } => {
                let zero = cst(Rat::zero());
                self.extremum(&[(**arg).clone(), zero], g, false)
            }
        }
    }

    fn extremum(&self, args: &[PwlExpr], g: HPoly, is_min: bool) -> Result<Vec<(AffineForm, HPoly)>> {
        let mut acc: Vec<(Vec<AffineForm>, HPoly)> = vec![(vec![], g)];
        for a in args {
            let mut next = Vec::new();
            for (fs, g) in acc {
                for (fa, ga) in self.cells(a, g)? {
                    let mut fs2 = fs.clone();
                    fs2.push(fa);
                    next.push((fs2, ga));
                }
            }
            acc = next;
        }
        let mut out = Vec::new();
        for (mut fs, g) in acc {
            fs.sort();
            fs.dedup();
            if fs.len() == 1 {
                out.push((fs.remove(0), g));
                continue;
            }
            for (i, fi) in fs.iter().enumerate() {
                let mut rows = Vec::new();
                for (j, fj) in fs.iter().enumerate() {
                    if i != j {
                        let diff = if is_min { fj.sub(fi) } else { fi.sub(fj) };
                        rows.push(diff.nonneg(self.params)?);
                    }
                }
                let cand = match g.with_rows(rows, vec![]) {
                    Ok(c) => c,
                    Err(GeomError::InfeasibleRow) => continue,
                    Err(e) => return Err(e.into()),
                };
                if let Some(c) = self.clean(&cand)? {
                    out.push((fi.clone(), c));
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratgeom::{q, qi};

    #[test]
    fn positive_part() {
        let e = pos(var("t") - var("b"));
        assert_eq!(e.eval(&env([("t", qi(1)), ("b", qi(2))])).unwrap(), qi(0));
        assert_eq!(e.eval(&env([("t", qi(3))])), Err(PwlError::MissingParameter("b".into())));
    }

    #[test]
    fn json_tree() {
        let e = min(vec![var("t"), cst(qi(1))]);
        let s = serde_json::to_string(&e).unwrap();
        assert!(s.starts_with(r#"{"op":"min","args":[{"op":"affine""#));
        let back: PwlExpr = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
        let bad: PwlExpr = serde_json::from_str(r#"{"op":"max","args":[]}"#).unwrap();
        assert_eq!(bad.validate(), Err(PwlError::EmptyNode("max")));
    }

    #[test]
    fn min_t_one_two_cells() {
        let e = min(vec![var("t"), cst(qi(1))]);
        let dom = HPoly::cube(&[qi(0)], &[qi(2)]);
        let cells = branches(&e, &["t"], &dom).unwrap();
        assert_eq!(cells.len(), 2);
        let mut spans: Vec<(Rat, Rat, AffineForm)> = cells
            .iter()
            .map(|c| {
                let v = c.guard.to_v().unwrap();
                (v.vertices()[0][0].clone(), v.vertices()[1][0].clone(), c.active_form.clone())
            })
            .collect();
        spans.sort();
        assert_eq!(spans[0], (qi(0), qi(1), AffineForm::var("t")));
        assert_eq!(spans[1], (qi(1), qi(2), AffineForm::constant(qi(1))));
    }

    #[test]
    fn substitution_and_display() {
        let e = min(vec![cst(qi(1)) - var("s"), var("e")]);
        let ee = cst(qi(1)) + var("s") * q(1, 2) - var("t");
        let j = e.substitute("e", &ee);
        let v = j.eval(&env([("s", q(1, 2)), ("t", q(5, 4))])).unwrap();
        assert_eq!(v, qi(0));
        assert_eq!(ee.to_string(), "1/2*s - t + 1");
    }

    #[test]
    fn parse_ledger_syntax() {
        let e: PwlExpr = "3/2*min(1/6*s, 1 + s/2 - t)".parse().unwrap();
        let v = e.eval(&env([("s", q(1, 2)), ("t", qi(0))])).unwrap();
        assert_eq!(v, q(1, 8));
        assert!("pos(t - a)^".parse::<PwlExpr>().is_err());
        assert!("s*t".parse::<PwlExpr>().is_err());
        assert!("min(s,".parse::<PwlExpr>().is_err());
        let round: PwlExpr = "max(-s, 2*(t - 1), pos(s + t))".parse().unwrap();
        let again: PwlExpr = round.to_string().parse().unwrap();
        let at = env([("s", q(-3, 7)), ("t", q(5, 4))]);
        assert_eq!(round.eval(&at).unwrap(), again.eval(&at).unwrap());
    }
}
