//! Sparse multivariate polynomials with exact coefficients.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Coeff, Field};
use crate::monomial::{Monomial, MonomialOrder};
use crate::ring::{same_ring, PolyRing};

pub type Term = (Monomial, Coeff);

/// A polynomial in a [`PolyRing`]. Terms are stored with nonzero
/// coefficients, sorted descending in grevlex, which makes structural
/// equality coincide with polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<Term>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub(crate) fn sort_terms(terms: &mut [Term], order: MonomialOrder) {
    terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
}

/// `f - c * m * g` for term lists sorted descending under `order`.
pub(crate) fn sub_scaled(field: &Field, order: MonomialOrder, f: &[Term], c: &Coeff, m: &Monomial, g: &[Term]) -> Vec<Term> {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let mut i = 0;
    let mut j = 0;
    let neg_c = field.neg(c);
    while i < f.len() || j < g.len() {
        if j == g.len() {
            out.extend_from_slice(&f[i..]);
            break;
        }
        let gm = m.mul(&g[j].0);
        if i == f.len() {
            out.push((gm, field.mul(&neg_c, &g[j].1)));
            j += 1;
            continue;
        }
        match order.cmp(&f[i].0, &gm) {
            Ordering::Greater => {
                out.push(f[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((gm, field.mul(&neg_c, &g[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let v = field.add(&f[i].1, &field.mul(&neg_c, &g[j].1));
                if !v.is_zero() {
                    out.push((gm, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Full reduction of `f` by `basis` (each sorted descending under `order`,
/// nonzero, and monic). Returns the remainder sorted under `order`.
pub(crate) fn reduce_terms(field: &Field, order: MonomialOrder, f: Vec<Term>, basis: &[&[Term]]) -> Vec<Term> {
    let mut rem: Vec<Term> = Vec::new();
    let mut p = f;
    'outer: while !p.is_empty() {
        let (lm, lc) = p[0].clone();
        for g in basis {
            if let Some(q) = g[0].0.divide_into(&lm) {
                let c = field.div(&lc, &g[0].1);
                p = sub_scaled(field, order, &p, &c, &q, g);
                continue 'outer;
            }
        }
        rem.push(p.remove(0));
    }
    rem
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Polynomial {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Coeff) -> Polynomial {
        Polynomial::from_terms(ring, vec![(Monomial::one(ring.nvars()), c)])
    }

    pub fn one(ring: &Arc<PolyRing>) -> Polynomial {
        Polynomial::constant(ring, ring.field().one())
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Polynomial {
        Polynomial::monomial(ring, Monomial::var(ring.nvars(), i))
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial) -> Polynomial {
        Polynomial { ring: ring.clone(), terms: vec![(m, ring.field().one())] }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates and
    /// dropping zero coefficients.
    pub fn from_terms(ring: &Arc<PolyRing>, terms: Vec<Term>) -> Polynomial {
        let field = ring.field();
        let mut acc: HashMap<Monomial, Coeff> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            match acc.get_mut(&m) {
                Some(v) => *v = field.add(v, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<Term> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        sort_terms(&mut terms, MonomialOrder::GrevLex);
        Polynomial { ring: ring.clone(), terms }
    }

    /// Takes terms already sorted under `order` and re-canonicalizes.
    pub(crate) fn from_sorted(ring: &Arc<PolyRing>, mut terms: Vec<Term>, order: MonomialOrder) -> Polynomial {
        if order != MonomialOrder::GrevLex {
            sort_terms(&mut terms, MonomialOrder::GrevLex);
        }
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn field(&self) -> &Field {
        self.ring.field()
    }

    /// Terms, descending in grevlex.
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn terms_in(&self, order: MonomialOrder) -> Vec<Term> {
        let mut t = self.terms.clone();
        if order != MonomialOrder::GrevLex {
            sort_terms(&mut t, order);
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<&Term> {
        self.terms.iter().max_by(|a, b| order.cmp(&a.0, &b.0))
    }

    /// True iff all terms share one total degree. The zero polynomial is homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => {
                let d = m.degree();
                self.terms.iter().all(|(m, _)| m.degree() == d)
            }
        }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let f = self.field();
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, a)| (m.clone(), f.mul(a, c))).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.clone())).collect() }
    }

    /// Divides by the grevlex leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&self.field().inv(c)),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn add_impl(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let field = self.field();
        let c = if negate { field.one() } else { field.from_i64(-1) };
        let terms = sub_scaled(field, MonomialOrder::GrevLex, &self.terms, &c, &Monomial::one(self.ring.nvars()), &other.terms);
        Polynomial { ring: self.ring.clone(), terms }
    }

    fn mul_impl(&self, other: &Polynomial) -> Polynomial {
        let field = self.field();
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                terms.push((m.mul(n), field.mul(a, b)));
            }
        }
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Checked arithmetic; fails on ring mismatch.
    pub fn arith(&self, other: &Polynomial, op: ArithOp) -> Result<Polynomial> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(match op {
            ArithOp::Add => self.add_impl(other, false),
            ArithOp::Sub => self.add_impl(other, true),
            ArithOp::Mul => self.mul_impl(other),
        })
    }

    /// Exact quotient `self / divisor`, or `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let field = self.field();
        let order = MonomialOrder::GrevLex;
        let (dm, dc) = &divisor.terms[0];
        let dc_inv = field.inv(dc);
        let mut p = self.terms.clone();
        let mut quot = Vec::new();
        while !p.is_empty() {
            let q = dm.divide_into(&p[0].0)?;
            let c = field.mul(&p[0].1, &dc_inv);
            p = sub_scaled(field, order, &p, &c, &q, &divisor.terms);
            quot.push((q, c));
        }
        Some(Polynomial { ring: self.ring.clone(), terms: quot })
    }

    /// Moves the polynomial into `target`, sending variable `i` to `map[i]`.
    pub fn embed(&self, target: &Arc<PolyRing>, map: &[usize]) -> Polynomial {
        let n = target.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u16; n];
                for (i, &x) in m.exps().iter().enumerate() {
                    e[map[i]] += x;
                }
                (Monomial::new(&e), c.clone())
            })
            .collect();
        Polynomial::from_terms(target, terms)
    }

    /// Substitutes `1` for every variable not listed in `keep`, landing in `target`
    /// whose variables are `keep` in order.
    pub(crate) fn restrict_monomials(&self, target: &Arc<PolyRing>, keep: &[usize]) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.select(keep), c.clone())).collect();
        Polynomial::from_terms(target, terms)
    }
}

/// Division remainder of `f` by `basis` under `order`: no term of the result is
/// divisible by a leading term of the basis, and `f - remainder` lies in the
/// ideal the basis generates.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], order: MonomialOrder) -> Result<Polynomial> {
    if basis.iter().any(|g| !same_ring(g.ring(), f.ring())) {
        return Err(Error::RingMismatch);
    }
    if basis.iter().any(|g| g.is_zero()) {
        return Err(Error::InvalidArgument("basis contains the zero polynomial".into()));
    }
    let field = f.field();
    let sorted: Vec<Vec<Term>> = basis.iter().map(|g| g.monic_in(order)).collect();
    let refs: Vec<&[Term]> = sorted.iter().map(|v| v.as_slice()).collect();
    let rem = reduce_terms(field, order, f.terms_in(order), &refs);
    Ok(Polynomial::from_sorted(f.ring(), rem, order))
}

impl Polynomial {
    /// Terms sorted under `order`, scaled so the leading coefficient is one.
    pub(crate) fn monic_in(&self, order: MonomialOrder) -> Vec<Term> {
        let mut t = self.terms_in(order);
        if let Some((_, c)) = t.first() {
            if !c.is_one() {
                let field = self.field();
                let inv = field.inv(c);
                for term in t.iter_mut() {
                    term.1 = field.mul(&term.1, &inv);
                }
            }
        }
        t
    }
}

macro_rules! forward_op {
    ($tr:ident, $method:ident, $body:expr) => {
        impl std::ops::$tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            /// Panics on ring mismatch; use [`Polynomial::arith`] for a checked variant.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                assert!(same_ring(&self.ring, &rhs.ring), "ring mismatch");
                #[allow(clippy::redundant_closure_call)]
                ($body)(self, rhs)
            }
        }
    };
}

forward_op!(Add, add, |a: &Polynomial, b: &Polynomial| a.add_impl(b, false));
forward_op!(Sub, sub, |a: &Polynomial, b: &Polynomial| a.add_impl(b, true));
forward_op!(Mul, mul, |a: &Polynomial, b: &Polynomial| a.mul_impl(b));

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&self.field().from_i64(-1))
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, names: &[String], m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exps().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "{}", names[i])?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.field();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let (neg, abs) = c.signed_parts(field);
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if abs != "1" {
                    write!(f, "{abs}*")?;
                }
                write_monomial(f, self.ring.names(), m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}
