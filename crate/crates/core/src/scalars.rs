//! Exact multiplicative arithmetic for braiding scalars.
//!
//! A [`ScalarContext`] is a finitely generated abelian group `Z^s / L`
//! together with the characteristic of the ambient field. Scalars are
//! exponent vectors kept in a canonical normal form, so equality is
//! structural. Orders, discrete logarithms and q-integer vanishing are
//! decided through the Smith normal form of the relation lattice.
//!
//! Every context models a subgroup of some field's multiplicative group,
//! so the torsion part must be cyclic and of order prime to `p`. When
//! `p != 2` the element `-1` is the unique element of order two: it is
//! read off the declared torsion when that torsion has even order, and
//! otherwise added as a separate generator of order two.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Mul;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::field::{FieldElem, FiniteField};
use crate::lattice::{self, Echelon, Snf, Vector};

/// Name of the internal order-two generator.
pub const MINUS_ONE: &str = "-1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at column {column} in `{expr}`")]
pub struct ParseError {
    pub expr: String,
    /// 1-based.
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("characteristic {0} is neither 0 nor a prime")]
    InvalidChar(u64),
    #[error("torsion of exponent {exponent} has elements of order divisible by the characteristic {p}")]
    TorsionDivisibleByP { p: u64, exponent: String },
    #[error("bad relation `{relation}`: {reason}")]
    BadRelation { relation: String, reason: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator `{0}` declared twice")]
    DuplicateGenerator(String),
    #[error("invalid generator name `{0}`")]
    InvalidGeneratorName(String),
    #[error("generator `{0}` declared with order 0")]
    ZeroOrder(String),
    #[error("torsion subgroup with invariant factors [{0}] is not cyclic, so it lies in no field")]
    NonCyclicTorsion(String),
    #[error("relations force -1 = 1, which only holds in characteristic 2")]
    MinusOneTrivial,
    #[error("torsion subgroup too large")]
    TorsionTooLarge,
    #[error("scalars belong to different contexts")]
    ContextMismatch,
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("finite-field evaluation needs a field of characteristic {expected}, got {found}")]
    FieldMismatch { expected: u64, found: u64 },
    #[error("no value assigned to generator `{0}`")]
    MissingAssignment(String),
    #[error("assignment violates relation {0}")]
    AssignmentViolatesRelations(String),
}

/// A generator declaration: a name and an optional finite order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub order: Option<u64>,
}

impl Generator {
    pub fn free(name: impl Into<String>) -> Self {
        Generator { name: name.into(), order: None }
    }

    pub fn of_order(name: impl Into<String>, order: u64) -> Self {
        Generator { name: name.into(), order: Some(order) }
    }
}

/// A parsed monomial word: an optional `-1` factor times generator powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    pub negative: bool,
    pub factors: Vec<(String, i64)>,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError { expr: self.src.to_string(), column: self.pos + 1, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        self.src[start..self.pos].parse().map_err(|_| ParseError {
            expr: self.src.to_string(),
            column: start + 1,
            message: "exponent out of range".into(),
        })
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let mut chars = rest.char_indices();
        match chars.next() {
            Some((_, c)) if c.is_alphabetic() || c == '_' => {}
            _ => return None,
        }
        let end = chars.find(|(_, c)| !(c.is_alphanumeric() || *c == '_')).map_or(rest.len(), |(k, _)| k);
        self.pos += end;
        Some(rest[..end].to_string())
    }
}

/// Parse `expr := factor ('*' factor)*`, `factor := '-'? atom`,
/// `atom := '1' | ident ('^' '-'? digits)?`.
pub fn parse_word(src: &str) -> Result<Word, ParseError> {
    let mut lx = Lexer { src, pos: 0 };
    let mut word = Word { negative: false, factors: Vec::new() };
    loop {
        if lx.eat('-') {
            word.negative = !word.negative;
        }
        if lx.eat('1') {
            // bare unit
        } else if let Some(name) = lx.ident() {
            let exp = if lx.eat('^') {
                let neg = lx.eat('-');
                let d = lx.digits()?;
                if neg {
                    -d
                } else {
                    d
                }
            } else {
                1
            };
            word.factors.push((name, exp));
        } else {
            return Err(lx.err("expected `1` or a generator name"));
        }
        if lx.peek().is_none() {
            return Ok(word);
        }
        if !lx.eat('*') {
            return Err(lx.err("expected `*`"));
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Finite or infinite multiplicative order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl Order {
    pub fn is_finite(self) -> bool {
        matches!(self, Order::Finite(_))
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => f.write_str("infinite"),
        }
    }
}

/// The group `Z^s / L` housing all scalars of one computation.
pub struct ScalarContext {
    char_p: u64,
    names: Vec<String>,
    declared: Vec<Option<u64>>,
    minus_one_gen: Option<usize>,
    minus_one: Vector,
    relations: Vec<Vector>,
    echelon: Echelon,
    snf: Snf,
    exponent: Option<u64>,
}

impl fmt::Debug for ScalarContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarContext")
            .field("char_p", &self.char_p)
            .field("generators", &self.names)
            .field("relations", &self.relations.len())
            .finish()
    }
}

struct Torsion {
    factors: Vec<BigInt>,
}

impl Torsion {
    fn of(snf: &Snf) -> Self {
        Torsion { factors: snf.diag.iter().filter(|d| !d.is_one()).cloned().collect() }
    }

    fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    fn exponent(&self) -> BigInt {
        self.factors.last().cloned().unwrap_or_else(BigInt::one)
    }

    fn describe(&self) -> String {
        self.factors.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
    }
}

impl ScalarContext {
    /// Build a context from generator declarations and relation words
    /// (each word is asserted to equal 1).
    pub fn new<S: AsRef<str>>(p: u64, gens: &[Generator], relations: &[S]) -> Result<Arc<Self>, ScalarError> {
        if p != 0 && !is_prime(p) {
            return Err(ScalarError::InvalidChar(p));
        }
        let mut index = HashMap::new();
        for (k, g) in gens.iter().enumerate() {
            let valid =
                parse_word(&g.name).map(|w| !w.negative && w.factors.len() == 1 && w.factors[0] == (g.name.clone(), 1)).unwrap_or(false);
            if !valid {
                return Err(ScalarError::InvalidGeneratorName(g.name.clone()));
            }
            if g.order == Some(0) {
                return Err(ScalarError::ZeroOrder(g.name.clone()));
            }
            if index.insert(g.name.clone(), k).is_some() {
                return Err(ScalarError::DuplicateGenerator(g.name.clone()));
            }
        }
        let s = gens.len();
        let mut words = Vec::new();
        for rel in relations {
            let rel = rel.as_ref();
            let w = parse_word(rel).map_err(|e| ScalarError::BadRelation { relation: rel.to_string(), reason: e.to_string() })?;
            let mut v = lattice::zero_vector(s);
            for (name, e) in &w.factors {
                let k = *index
                    .get(name)
                    .ok_or_else(|| ScalarError::BadRelation { relation: rel.to_string(), reason: format!("unknown generator `{name}`") })?;
                v[k] += *e;
            }
            words.push((rel.to_string(), w.negative, v));
        }

        let mut rows: Vec<Vector> = Vec::new();
        for (k, g) in gens.iter().enumerate() {
            if let Some(n) = g.order {
                let mut v = lattice::zero_vector(s);
                v[k] = BigInt::from(n);
                rows.push(v);
            }
        }
        let signed: Vec<&Vector> = words.iter().filter(|(_, neg, _)| *neg && p != 2).map(|(_, _, v)| v).collect();
        rows.extend(words.iter().filter(|(_, neg, _)| !*neg || p == 2).map(|(_, _, v)| v.clone()));

        let mut names: Vec<String> = gens.iter().map(|g| g.name.clone()).collect();
        let mut declared: Vec<Option<u64>> = gens.iter().map(|g| g.order).collect();
        let mut minus_one_gen = None;
        let minus_one;

        if p == 2 {
            minus_one = lattice::zero_vector(s);
        } else {
            let snf = lattice::smith(&rows, s);
            let torsion = Torsion::of(&snf);
            if !torsion.is_cyclic() {
                return Err(ScalarError::NonCyclicTorsion(torsion.describe()));
            }
            let order = torsion.exponent();
            if order.is_even() {
                // unique element of order two in the cyclic torsion
                let k = snf.diag.len() - 1;
                let mut coords = lattice::zero_vector(s);
                coords[k] = &order / 2;
                minus_one = lattice::row_times(&coords, &snf.v_inv);
                for v in &signed {
                    let mut r = (*v).clone();
                    lattice::add_into(&mut r, &minus_one);
                    rows.push(r);
                }
            } else {
                // prepend an order-two generator
                for r in rows.iter_mut() {
                    r.insert(0, BigInt::zero());
                }
                let mut m = lattice::zero_vector(s + 1);
                m[0] = BigInt::from(2);
                rows.push(m);
                for v in &signed {
                    let mut r = (*v).clone();
                    r.insert(0, BigInt::one());
                    rows.push(r);
                }
                names.insert(0, MINUS_ONE.to_string());
                declared.insert(0, Some(2));
                minus_one_gen = Some(0);
                minus_one = lattice::unit_vector(s + 1, 0);
            }
        }

        let dim = names.len();
        let echelon = Echelon::new(dim, &rows);
        let snf = lattice::smith(&rows, dim);
        let torsion = Torsion::of(&snf);
        if !torsion.is_cyclic() {
            return Err(ScalarError::NonCyclicTorsion(torsion.describe()));
        }
        let exp = torsion.exponent();
        if p != 0 && exp.is_multiple_of(&BigInt::from(p)) {
            return Err(ScalarError::TorsionDivisibleByP { p, exponent: exp.to_string() });
        }
        if p != 2 && echelon.contains(&minus_one) {
            return Err(ScalarError::MinusOneTrivial);
        }
        let exponent = if torsion.factors.is_empty() { None } else { Some(exp.to_u64().ok_or(ScalarError::TorsionTooLarge)?) };
        let mut minus_one = minus_one;
        echelon.reduce(&mut minus_one);

        Ok(Arc::new(ScalarContext { char_p: p, names, declared, minus_one_gen, minus_one, relations: rows, echelon, snf, exponent }))
    }

    pub fn char_p(&self) -> u64 {
        self.char_p
    }

    /// Coordinate names, including the internal `-1` generator when present.
    pub fn coordinate_names(&self) -> &[String] {
        &self.names
    }

    /// Declared generators, excluding the internal `-1`.
    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        self.names
            .iter()
            .zip(&self.declared)
            .enumerate()
            .filter(move |(k, _)| Some(*k) != self.minus_one_gen)
            .map(|(_, (n, o))| Generator { name: n.clone(), order: *o })
    }

    /// Exponent of the torsion subgroup, `None` when it is trivial.
    pub fn torsion_exponent(&self) -> Option<u64> {
        self.exponent
    }

    fn dim(&self) -> usize {
        self.names.len()
    }

    fn scalar(self: &Arc<Self>, mut exps: Vector) -> Scalar {
        self.echelon.reduce(&mut exps);
        Scalar { ctx: Arc::clone(self), exps }
    }

    pub fn one(self: &Arc<Self>) -> Scalar {
        Scalar { ctx: Arc::clone(self), exps: lattice::zero_vector(self.dim()) }
    }

    /// `-1`; equal to `one()` in characteristic 2.
    pub fn minus_one(self: &Arc<Self>) -> Scalar {
        Scalar { ctx: Arc::clone(self), exps: self.minus_one.clone() }
    }

    pub fn generator(self: &Arc<Self>, name: &str) -> Result<Scalar, ScalarError> {
        let k =
            self.names.iter().position(|n| n == name && n != MINUS_ONE).ok_or_else(|| ScalarError::UnknownGenerator(name.to_string()))?;
        Ok(self.scalar(lattice::unit_vector(self.dim(), k)))
    }

    pub fn from_word(self: &Arc<Self>, word: &Word) -> Result<Scalar, ScalarError> {
        let mut exps = if word.negative { self.minus_one.clone() } else { lattice::zero_vector(self.dim()) };
        for (name, e) in &word.factors {
            let k =
                self.names.iter().position(|n| n == name && n != MINUS_ONE).ok_or_else(|| ScalarError::UnknownGenerator(name.clone()))?;
            exps[k] += *e;
        }
        Ok(self.scalar(exps))
    }

    /// Parse a scalar expression such as `-q^-2*r`.
    pub fn parse(self: &Arc<Self>, expr: &str) -> Result<Scalar, ScalarError> {
        self.from_word(&parse_word(expr)?)
    }

    /// Coordinates of `x` in the Smith basis.
    fn smith_coords(&self, x: &[BigInt]) -> Vector {
        lattice::row_times(x, &self.snf.v)
    }

    fn order_of(&self, x: &[BigInt]) -> Order {
        let c = self.smith_coords(x);
        let r = self.snf.rank();
        if c[r..].iter().any(|z| !z.is_zero()) {
            return Order::Infinite;
        }
        let mut n = BigInt::one();
        for (ck, dk) in c[..r].iter().zip(&self.snf.diag) {
            let part = dk / ck.gcd(dk);
            n = n.lcm(&part);
        }
        Order::Finite(n.to_u64().expect("orders are bounded by the torsion exponent"))
    }

    fn discrete_log_of(&self, base: &[BigInt], target: &[BigInt]) -> Option<u64> {
        let b = self.smith_coords(base);
        let t = self.smith_coords(target);
        let r = self.snf.rank();
        // free coordinates pin m down exactly whenever the base has a free part
        let mut forced: Option<BigInt> = None;
        for (bk, tk) in b[r..].iter().zip(&t[r..]) {
            if bk.is_zero() {
                if !tk.is_zero() {
                    return None;
                }
                continue;
            }
            if !tk.is_multiple_of(bk) {
                return None;
            }
            let m = tk / bk;
            if forced.as_ref().is_some_and(|f| *f != m) {
                return None;
            }
            forced = Some(m);
        }
        if let Some(m) = forced {
            if m.is_negative() {
                return None;
            }
            let ok = b[..r].iter().zip(&t[..r]).zip(&self.snf.diag).all(|((bk, tk), dk)| (&m * bk - tk).is_multiple_of(dk));
            return if ok { m.to_u64() } else { None };
        }
        let mut acc = (BigInt::zero(), BigInt::one());
        for ((bk, tk), dk) in b[..r].iter().zip(&t[..r]).zip(&self.snf.diag) {
            let (y0, step) = lattice::solve_linear_congruence(bk, tk, dk)?;
            acc = lattice::crt(&acc.0, &acc.1, &y0, &step)?;
        }
        acc.0.to_u64()
    }

    /// Every `y` with `y^d = c`, for `d >= 1`. The set is finite because
    /// the torsion subgroup is.
    pub fn nth_roots(self: &Arc<Self>, c: &Scalar, d: &BigInt) -> Vec<Scalar> {
        assert!(d.is_positive(), "root degree must be positive");
        let coords = self.smith_coords(&c.exps);
        let r = self.snf.rank();
        let mut options: Vec<Vec<BigInt>> = Vec::with_capacity(coords.len());
        for (k, ck) in coords.iter().enumerate() {
            if k < r {
                let dk = &self.snf.diag[k];
                let Some((y0, step)) = lattice::solve_linear_congruence(d, ck, dk) else {
                    return Vec::new();
                };
                let mut opts = Vec::new();
                let mut y = y0;
                while &y < dk {
                    opts.push(y.clone());
                    y += &step;
                }
                options.push(opts);
            } else {
                if !ck.is_multiple_of(d) {
                    return Vec::new();
                }
                options.push(vec![ck / d]);
            }
        }
        let mut out: Vec<Vector> = vec![Vec::new()];
        for opts in options {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    opts.iter().map(move |y| {
                        let mut v = prefix.clone();
                        v.push(y.clone());
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(|y| self.scalar(lattice::row_times(&y, &self.snf.v_inv))).collect()
    }

    /// Homomorphic evaluation of `a` in a finite field, given images of the
    /// declared generators. The assignment must respect every relation and
    /// send the context's `-1` to the field's `-1`.
    pub fn eval_finite_field(
        self: &Arc<Self>,
        field: &FiniteField,
        assignment: &HashMap<String, FieldElem>,
        a: &Scalar,
    ) -> Result<FieldElem, ScalarError> {
        if !Arc::ptr_eq(self, &a.ctx) {
            return Err(ScalarError::ContextMismatch);
        }
        let images = self.images(field, assignment)?;
        for rel in &self.relations {
            if field.eval_monomial(&images, rel) != field.one() {
                return Err(ScalarError::AssignmentViolatesRelations(self.format_exps(rel)));
            }
        }
        if field.eval_monomial(&images, &self.minus_one) != field.neg(&field.one()) {
            return Err(ScalarError::AssignmentViolatesRelations("-1 must evaluate to -1".into()));
        }
        Ok(field.eval_monomial(&images, &a.exps))
    }

    fn images(&self, field: &FiniteField, assignment: &HashMap<String, FieldElem>) -> Result<Vec<FieldElem>, ScalarError> {
        if field.characteristic() != self.char_p {
            return Err(ScalarError::FieldMismatch { expected: self.char_p, found: field.characteristic() });
        }
        self.names
            .iter()
            .enumerate()
            .map(|(k, name)| {
                if Some(k) == self.minus_one_gen {
                    return Ok(field.neg(&field.one()));
                }
                let x = assignment.get(name).ok_or_else(|| ScalarError::MissingAssignment(name.clone()))?;
                if field.is_zero(x) {
                    return Err(ScalarError::AssignmentViolatesRelations(format!("{name} = 0")));
                }
                Ok(x.clone())
            })
            .collect()
    }

    fn format_exps(&self, exps: &[BigInt]) -> String {
        let mut negative = false;
        let mut parts = Vec::new();
        for (k, e) in exps.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            if Some(k) == self.minus_one_gen {
                negative = e.is_odd();
                continue;
            }
            if e.is_one() {
                parts.push(self.names[k].clone());
            } else {
                parts.push(format!("{}^{}", self.names[k], e));
            }
        }
        let body = if parts.is_empty() { "1".to_string() } else { parts.join("*") };
        if negative {
            format!("-{body}")
        } else {
            body
        }
    }
}

/// An element of a [`ScalarContext`], stored in normal form.
#[derive(Clone)]
pub struct Scalar {
    ctx: Arc<ScalarContext>,
    exps: Vector,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx) && self.exps == other.exps
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.exps.hash(state);
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ctx.format_exps(&self.exps))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl Scalar {
    pub fn context(&self) -> &Arc<ScalarContext> {
        &self.ctx
    }

    /// Normal-form exponent vector.
    pub fn exponents(&self) -> &[BigInt] {
        &self.exps
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        if !Arc::ptr_eq(&self.ctx, &other.ctx) {
            return Err(ScalarError::ContextMismatch);
        }
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Ok(self.ctx.scalar(exps))
    }

    pub fn inv(&self) -> Scalar {
        self.ctx.scalar(self.exps.iter().map(|a| -a).collect())
    }

    pub fn pow(&self, n: i64) -> Scalar {
        let n = BigInt::from(n);
        self.ctx.scalar(self.exps.iter().map(|a| a * &n).collect())
    }

    pub fn pow_big(&self, n: &BigInt) -> Scalar {
        self.ctx.scalar(self.exps.iter().map(|a| a * n).collect())
    }

    pub fn is_one(&self) -> bool {
        lattice::is_zero(&self.exps)
    }

    pub fn order(&self) -> Order {
        self.ctx.order_of(&self.exps)
    }

    /// Membership in `G'_n`, the primitive `n`-th roots of unity.
    pub fn in_primitive_roots(&self, n: u64) -> bool {
        self.order() == Order::Finite(n)
    }

    /// Whether `(n)_q = 1 + q + … + q^(n-1)` vanishes.
    pub fn qnum_is_zero(&self, n: u64) -> bool {
        if n == 0 {
            return true;
        }
        if self.is_one() {
            let p = self.ctx.char_p;
            return p != 0 && n.is_multiple_of(p);
        }
        match self.order() {
            Order::Finite(k) => n.is_multiple_of(k),
            Order::Infinite => false,
        }
    }

    /// Least `m >= 0` with `self^m == target`.
    pub fn discrete_log(&self, target: &Scalar) -> Option<u64> {
        if !Arc::ptr_eq(&self.ctx, &target.ctx) {
            return None;
        }
        self.ctx.discrete_log_of(&self.exps, &target.exps)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;

    /// Panics when the operands come from different contexts; see [`Scalar::try_mul`].
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.try_mul(rhs).expect("scalars from different contexts")
    }
}

impl Mul for Scalar {
    type Output = Scalar;

    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, gens: &[Generator], rels: &[&str]) -> Arc<ScalarContext> {
        ScalarContext::new(p, gens, rels).unwrap()
    }

    #[test]
    fn grammar() {
        let w = parse_word("-q^-2 * r").unwrap();
        assert!(w.negative);
        assert_eq!(w.factors, vec![("q".into(), -2), ("r".into(), 1)]);
        assert_eq!(parse_word("1").unwrap().factors, vec![]);
        assert!(parse_word("-1").unwrap().negative);
        let e = parse_word("q^").unwrap_err();
        assert_eq!(e.column, 3);
        assert!(parse_word("q r").is_err());
        assert!(parse_word("").is_err());
    }

    #[test]
    fn free_generator_context() {
        let c = ctx(5, &[Generator::free("q")], &[]);
        let q = c.generator("q").unwrap();
        assert_eq!(q.order(), Order::Infinite);
        assert!(q.pow(0).is_one());
        assert!((&q * &q.inv()).is_one());
        assert_eq!(c.minus_one().order(), Order::Finite(2));
    }

    #[test]
    fn torsion_divisible_by_p_is_rejected() {
        let e = ScalarContext::new(3, &[Generator::of_order("z", 3)], &[] as &[&str]).unwrap_err();
        assert!(matches!(e, ScalarError::TorsionDivisibleByP { p: 3, .. }));
        // order 4 in char 2
        assert!(ScalarContext::new(2, &[Generator::of_order("z", 4)], &[] as &[&str]).is_err());
    }

    #[test]
    fn composite_characteristic_is_rejected() {
        assert_eq!(ScalarContext::new(4, &[], &[] as &[&str]).unwrap_err(), ScalarError::InvalidChar(4));
        assert!(ScalarContext::new(0, &[], &[] as &[&str]).is_ok());
    }

    #[test]
    fn unknown_generator_in_relation() {
        let e = ScalarContext::new(5, &[Generator::free("q")], &["q*w"]).unwrap_err();
        assert!(matches!(e, ScalarError::BadRelation { .. }));
    }

    #[test]
    fn product_relation_holds() {
        let c = ctx(0, &[Generator::free("q"), Generator::free("r"), Generator::free("s")], &["q*r*s"]);
        assert!(c.parse("q*r*s").unwrap().is_one());
        assert_eq!(c.parse("q*r").unwrap(), c.parse("s^-1").unwrap());
        assert_eq!(c.parse("q*r").unwrap().order(), Order::Infinite);
    }

    #[test]
    fn minus_one_in_char_two_is_one() {
        let c = ctx(2, &[Generator::free("q")], &[]);
        assert!(c.minus_one().is_one());
        assert_eq!(c.parse("-q").unwrap(), c.parse("q").unwrap());
    }

    #[test]
    fn minus_one_is_derived_from_even_torsion() {
        let c = ctx(7, &[Generator::of_order("z", 6)], &[]);
        assert_eq!(c.minus_one(), c.parse("z^3").unwrap());
        assert!(c.coordinate_names().iter().all(|n| n != MINUS_ONE));
        assert_eq!(c.parse("-z^-1").unwrap().order(), Order::Finite(3));
    }

    #[test]
    fn signed_relation_defines_fourth_root() {
        let c = ctx(5, &[Generator::free("q")], &["-q^2"]);
        let q = c.generator("q").unwrap();
        assert_eq!(q.order(), Order::Finite(4));
        assert_eq!(q.pow(2), c.minus_one());
    }

    #[test]
    fn non_cyclic_torsion_is_rejected() {
        let e = ScalarContext::new(7, &[Generator::of_order("a", 3), Generator::of_order("b", 3)], &[] as &[&str]);
        assert!(matches!(e, Err(ScalarError::NonCyclicTorsion(_))));
        // coprime orders are fine
        assert!(ScalarContext::new(7, &[Generator::of_order("a", 3), Generator::of_order("b", 2)], &[] as &[&str]).is_ok());
    }

    #[test]
    fn minus_one_cannot_be_trivial() {
        let e = ScalarContext::new(5, &[], &["-1"]).unwrap_err();
        assert_eq!(e, ScalarError::MinusOneTrivial);
    }

    #[test]
    fn orders_and_primitive_roots() {
        let c = ctx(7, &[Generator::of_order("z", 9)], &[]);
        let z = c.generator("z").unwrap();
        assert_eq!(z.pow(3).order(), Order::Finite(3));
        assert!(z.pow(3).in_primitive_roots(3));
        assert!(!z.in_primitive_roots(3));
        assert!(c.one().in_primitive_roots(1));
        let c3 = ctx(7, &[Generator::of_order("z", 3)], &[]);
        assert!(c3.generator("z").unwrap().pow(3).is_one());
    }

    #[test]
    fn qnum_zero_criterion() {
        let c = ctx(5, &[Generator::of_order("z", 3), Generator::free("q")], &[]);
        let z = c.generator("z").unwrap();
        assert!(z.qnum_is_zero(3));
        assert!(!z.qnum_is_zero(2));
        assert!(!c.generator("q").unwrap().qnum_is_zero(1));
        assert!(c.one().qnum_is_zero(5));
        assert!(!c.one().qnum_is_zero(4));
        assert!(c.one().qnum_is_zero(0));
        let c0 = ctx(0, &[], &[]);
        assert!(!c0.one().qnum_is_zero(7));
    }

    #[test]
    fn discrete_logs() {
        let c = ctx(5, &[Generator::free("q")], &[]);
        let q = c.generator("q").unwrap();
        assert_eq!(q.discrete_log(&q.pow(5)), Some(5));
        assert_eq!(q.discrete_log(&q.inv()), None);
        assert_eq!(q.discrete_log(&c.one()), Some(0));
        let c6 = ctx(7, &[Generator::of_order("z", 6)], &[]);
        let z = c6.generator("z").unwrap();
        assert_eq!(z.discrete_log(&z.pow(4)), Some(4));
        assert_eq!(z.pow(2).discrete_log(&z.pow(4)), Some(2));
        assert_eq!(z.pow(2).discrete_log(&z), None);
        // mixed free and torsion part
        let cm = ctx(7, &[Generator::free("q"), Generator::of_order("z", 3)], &[]);
        let b = cm.parse("q*z").unwrap();
        assert_eq!(b.discrete_log(&cm.parse("q^4*z").unwrap()), Some(4));
        assert_eq!(b.discrete_log(&cm.parse("q^4").unwrap()), None);
    }

    #[test]
    fn normal_form_is_idempotent_and_canonical() {
        let c = ctx(7, &[Generator::of_order("z", 9), Generator::free("q")], &[]);
        let a = c.parse("z^-1*q^2").unwrap();
        let b = c.parse("z^8*q^2").unwrap();
        assert_eq!(a, b);
        assert_eq!(c.scalar(a.exponents().to_vec()), a);
    }

    #[test]
    fn display_round_trips() {
        let c = ctx(7, &[Generator::free("q"), Generator::of_order("z", 3)], &[]);
        for e in ["-q^-2*z", "1", "-1", "q", "z^2"] {
            let s = c.parse(e).unwrap();
            assert_eq!(c.parse(&s.to_string()).unwrap(), s);
        }
    }

    #[test]
    fn roots_in_mixed_group() {
        let c = ctx(7, &[Generator::free("q"), Generator::of_order("z", 6)], &[]);
        let target = c.parse("q^2*z^2").unwrap();
        let roots = c.nth_roots(&target, &BigInt::from(2));
        assert_eq!(roots.len(), 2);
        for y in &roots {
            assert_eq!(y.pow(2), target);
        }
        assert!(c.nth_roots(&c.parse("q").unwrap(), &BigInt::from(2)).is_empty());
        assert_eq!(c.nth_roots(&c.one(), &BigInt::from(3)).len(), 3);
    }

    #[test]
    fn context_mismatch() {
        let a = ctx(5, &[Generator::free("q")], &[]);
        let b = ctx(5, &[Generator::free("q")], &[]);
        let e = a.one().try_mul(&b.one()).unwrap_err();
        assert_eq!(e, ScalarError::ContextMismatch);
    }
}
