//! Combinatorial oracle for monomial ideals.
//!
//! Everything here is computed from exponent vectors alone: irreducible
//! decomposition by generator splitting, associated primes as radicals of the
//! irredundant components, and localization at monomial primes by setting
//! the variables outside the prime to one. None of it touches Groebner bases,
//! which is what makes it usable as an independent check on the general
//! machinery.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::PolyRing;

/// The prime `(x_i : i ∈ vars)`. Indices are sorted and distinct.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonomialPrime {
    vars: Vec<usize>,
}

impl MonomialPrime {
    pub fn new(vars: impl IntoIterator<Item = usize>) -> MonomialPrime {
        let set: BTreeSet<usize> = vars.into_iter().collect();
        MonomialPrime { vars: set.into_iter().collect() }
    }

    pub fn maximal(nvars: usize) -> MonomialPrime {
        MonomialPrime::new(0..nvars)
    }

    /// Parses a prime from variable names.
    pub fn from_names<S: AsRef<str>>(ring: &PolyRing, names: &[S]) -> Result<MonomialPrime> {
        let mut vars = Vec::new();
        for n in names {
            let n = n.as_ref();
            vars.push(ring.var_index(n).ok_or_else(|| Error::UnknownVariable { name: n.to_string(), pos: 0 })?);
        }
        Ok(MonomialPrime::new(vars))
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn height(&self) -> usize {
        self.vars.len()
    }

    /// `dim R/P = n - |S|`.
    pub fn dim(&self, nvars: usize) -> i64 {
        nvars as i64 - self.vars.len() as i64
    }

    pub fn contains_monomial(&self, m: &Monomial) -> bool {
        self.vars.iter().any(|&i| m.exp(i) > 0)
    }

    pub fn is_subset_of(&self, other: &MonomialPrime) -> bool {
        self.vars.iter().all(|v| other.vars.contains(v))
    }

    pub fn to_ideal(&self, ring: &Arc<PolyRing>) -> Ideal {
        Ideal::new(ring, self.vars.iter().map(|&i| Polynomial::var(ring, i)).collect()).expect("same ring")
    }

    pub fn render(&self, ring: &PolyRing) -> String {
        let names: Vec<&str> = self.vars.iter().map(|&i| ring.names()[i].as_str()).collect();
        format!("({})", names.join(", "))
    }
}

/// Irreducible monomial ideal `(x_i^{a_i} : i ∈ S)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IrreducibleComponent {
    powers: BTreeMap<usize, u16>,
}

impl IrreducibleComponent {
    pub fn powers(&self) -> &BTreeMap<usize, u16> {
        &self.powers
    }

    pub fn radical(&self) -> MonomialPrime {
        MonomialPrime::new(self.powers.keys().copied())
    }

    /// `other ⊆ self`: every generator `x_i^b` of `other` is divisible by
    /// some `x_i^a` of `self`.
    pub fn contains(&self, other: &IrreducibleComponent) -> bool {
        other.powers.iter().all(|(i, b)| self.powers.get(i).is_some_and(|a| a <= b))
    }

    pub fn generators(&self, nvars: usize) -> Vec<Monomial> {
        self.powers
            .iter()
            .map(|(&i, &a)| {
                let mut e = vec![0u16; nvars];
                e[i] = a;
                Monomial::new(&e)
            })
            .collect()
    }

    pub fn to_ideal(&self, ring: &Arc<PolyRing>) -> Ideal {
        let gens = self.generators(ring.nvars()).into_iter().map(|m| Polynomial::monomial(ring, m)).collect();
        Ideal::new(ring, gens).expect("same ring")
    }
}

/// A monomial ideal given by its minimal monomial generators.
#[derive(Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    ring: Arc<PolyRing>,
    gens: Vec<Monomial>,
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out.sort();
    out
}

fn irredundant(mut comps: Vec<IrreducibleComponent>) -> Vec<IrreducibleComponent> {
    comps.sort();
    comps.dedup();
    let keep: Vec<bool> =
        (0..comps.len()).map(|i| !(0..comps.len()).any(|j| j != i && comps[i].contains(&comps[j]))).collect();
    comps.into_iter().zip(keep).filter(|(_, k)| *k).map(|(c, _)| c).collect()
}

fn split(gens: Vec<Monomial>, memo: &mut HashMap<Vec<Monomial>, Vec<IrreducibleComponent>>) -> Vec<IrreducibleComponent> {
    let gens = minimalize(gens);
    if let Some(hit) = memo.get(&gens) {
        return hit.clone();
    }
    let mixed = gens.iter().find(|m| m.pure_power_var().is_none()).cloned();
    let result = match mixed {
        None => {
            let powers = gens.iter().map(|m| {
                let i = m.pure_power_var().expect("pure power");
                (i, m.exp(i))
            });
            vec![IrreducibleComponent { powers: powers.collect() }]
        }
        Some(m) => {
            // m = x_i^a * rest, so J = (J + x_i^a) ∩ (J + rest).
            let i = m.support().next().expect("non-constant");
            let mut pow = vec![0u16; m.nvars()];
            pow[i] = m.exp(i);
            let pow = Monomial::new(&pow);
            let rest = pow.divide_into(&m).expect("divides");
            let mut left = gens.clone();
            left.push(pow);
            let mut right = gens.clone();
            right.push(rest);
            let mut out = split(left, memo);
            out.extend(split(right, memo));
            irredundant(out)
        }
    };
    memo.insert(gens, result.clone());
    result
}

impl MonomialIdeal {
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Monomial>) -> MonomialIdeal {
        MonomialIdeal { ring: ring.clone(), gens: minimalize(gens) }
    }

    /// Reads a monomial ideal off an [`Ideal`]; fails if the ideal is not monomial.
    pub fn from_ideal(ideal: &Ideal) -> Result<MonomialIdeal> {
        match ideal.monomial_generators() {
            Some(g) => Ok(MonomialIdeal::new(ideal.ring(), g)),
            None => {
                let bad = ideal.gens().iter().find(|g| !g.is_monomial()).map(|g| g.to_string()).unwrap_or_default();
                Err(Error::NotMonomial(bad))
            }
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|m| m.is_one())
    }

    pub fn contains_monomial(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// `J ⊆ P`, i.e. `P ∈ V(J) = Supp R/J`.
    pub fn contained_in_prime(&self, p: &MonomialPrime) -> bool {
        self.gens.iter().all(|g| p.contains_monomial(g))
    }

    pub fn to_ideal(&self) -> Ideal {
        let gens = self.gens.iter().map(|m| Polynomial::monomial(&self.ring, m.clone())).collect();
        Ideal::new(&self.ring, gens).expect("same ring")
    }

    pub fn with_monomials(&self, extra: &[Monomial]) -> MonomialIdeal {
        let mut g = self.gens.clone();
        g.extend_from_slice(extra);
        MonomialIdeal::new(&self.ring, g)
    }

    /// Combinatorial intersection: minimal generators are among the pairwise lcms.
    pub fn intersect(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut g = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                g.push(a.lcm(b));
            }
        }
        MonomialIdeal::new(&self.ring, g)
    }

    /// Irredundant irreducible decomposition. Requires a proper ideal.
    pub fn irreducible_decomposition(&self) -> Result<Vec<IrreducibleComponent>> {
        if self.is_unit() {
            return Err(Error::ZeroModule);
        }
        let mut memo = HashMap::new();
        Ok(split(self.gens.clone(), &mut memo))
    }

    /// Associated primes of `R/J`, sorted.
    pub fn ass(&self) -> Result<Vec<MonomialPrime>> {
        let set: BTreeSet<MonomialPrime> = self.irreducible_decomposition()?.iter().map(|c| c.radical()).collect();
        Ok(set.into_iter().collect())
    }

    /// Associated primes of maximal dimension.
    pub fn assh(&self) -> Result<Vec<MonomialPrime>> {
        let n = self.ring.nvars();
        let ass = self.ass()?;
        let d = ass.iter().map(|p| p.dim(n)).max().expect("proper ideal has an associated prime");
        Ok(ass.into_iter().filter(|p| p.dim(n) == d).collect())
    }

    /// `dim R/J` as the largest `dim R/P` over associated primes; `-1` for the unit ideal.
    pub fn dim(&self) -> i64 {
        match self.ass() {
            Err(_) => -1,
            Ok(ass) => ass.iter().map(|p| p.dim(self.ring.nvars())).max().unwrap_or(-1),
        }
    }

    /// Minimal primes of `R/J` (the minimal elements of `Ass`).
    pub fn minimal_primes(&self) -> Result<Vec<MonomialPrime>> {
        let ass = self.ass()?;
        Ok(ass.iter().filter(|p| !ass.iter().any(|q| q != *p && q.is_subset_of(p))).cloned().collect())
    }

    /// Presents `(R/J)_P` as `k[P's variables]/J_P`, where `J_P` sends each
    /// generator to its part in `P`'s variables. The result is the unit ideal
    /// exactly when `P ∉ Supp R/J`.
    pub fn localize(&self, p: &MonomialPrime) -> Result<MonomialIdeal> {
        if p.vars.is_empty() {
            return Err(Error::InvalidArgument("localization at the zero prime has no variables left".into()));
        }
        let sub = self.ring.subring(&p.vars)?;
        let gens = self.gens.iter().map(|m| m.select(&p.vars)).collect();
        Ok(MonomialIdeal::new(&sub, gens))
    }

    pub fn render(&self) -> String {
        self.to_ideal().to_string()
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonomialIdeal{}", self.render())
    }
}

/// Irredundant irreducible decomposition of a monomial ideal.
pub fn irreducible_decomposition(j: &Ideal) -> Result<Vec<IrreducibleComponent>> {
    MonomialIdeal::from_ideal(j)?.irreducible_decomposition()
}

pub fn ass_monomial(j: &Ideal) -> Result<Vec<MonomialPrime>> {
    MonomialIdeal::from_ideal(j)?.ass()
}

pub fn assh_monomial(j: &Ideal) -> Result<Vec<MonomialPrime>> {
    MonomialIdeal::from_ideal(j)?.assh()
}

/// `f ∈ P` for a monomial prime: every term of `f` involves a variable of `P`.
pub fn member_of_monomial_prime(f: &Polynomial, p: &MonomialPrime) -> bool {
    f.terms().iter().all(|(m, _)| p.contains_monomial(m))
}

pub fn localize_at_monomial_prime(j: &Ideal, p: &MonomialPrime) -> Result<MonomialIdeal> {
    MonomialIdeal::from_ideal(j)?.localize(p)
}

/// All monomial primes of a ring with `nvars` variables, by height.
pub fn all_monomial_primes(nvars: usize) -> impl Iterator<Item = MonomialPrime> {
    let mut subsets: Vec<u32> = (0u32..(1 << nvars)).collect();
    subsets.sort_by_key(|s| (s.count_ones(), *s));
    subsets.into_iter().map(move |s| MonomialPrime::new((0..nvars).filter(|i| s & (1 << i) != 0)))
}
