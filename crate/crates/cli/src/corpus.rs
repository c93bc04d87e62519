//! Seeded random corpora of monomial ideals.

use rand::seq::SliceRandom;
use rand::Rng;
use redsop_core::{Monomial, PolyRing, Polynomial, RngSeed, DEFAULT_PRIME};
use serde::{Deserialize, Serialize};

use crate::session::{CmMethod, CommandSpec, SessionInput};

/// Default caps; exceeding them needs `allow_large`.
pub const CAP_NVARS: usize = 4;
pub const CAP_DEGREE: u32 = 4;
pub const CAP_GENERATORS: usize = 6;
/// Hard limit from the dimension routine.
pub const HARD_NVARS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CorpusError {
    #[error("corpus count must be at least 1")]
    EmptyCount,
    #[error("{what} = {value} is outside 1..={cap}{hint}")]
    Bounds { what: &'static str, value: usize, cap: usize, hint: &'static str },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSpec {
    /// Variables per fixture are drawn from `min_nvars..=nvars`.
    pub nvars: usize,
    pub min_nvars: usize,
    pub max_generators: usize,
    pub max_degree: u32,
    pub squarefree: bool,
    pub count: usize,
    pub seed: u64,
    #[serde(default)]
    pub allow_large: bool,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            nvars: CAP_NVARS,
            min_nvars: 2,
            max_generators: CAP_GENERATORS,
            max_degree: CAP_DEGREE,
            squarefree: false,
            count: 100,
            seed: 1,
            allow_large: false,
        }
    }
}

impl CorpusSpec {
    pub fn validate(&self) -> Result<(), CorpusError> {
        if self.count == 0 {
            return Err(CorpusError::EmptyCount);
        }
        let hint = " (pass --allow-large to lift the default caps)";
        let check = |what, value: usize, cap: usize, hard: usize| {
            let limit = if self.allow_large { hard } else { cap };
            if value == 0 || value > limit {
                Err(CorpusError::Bounds { what, value, cap: limit, hint: if value <= hard { hint } else { "" } })
            } else {
                Ok(())
            }
        };
        check("nvars", self.nvars, CAP_NVARS, HARD_NVARS)?;
        check("min_nvars", self.min_nvars, self.nvars, self.nvars)?;
        check("max_generators", self.max_generators, CAP_GENERATORS, 64)?;
        check("max_degree", self.max_degree as usize, CAP_DEGREE as usize, 16)?;
        Ok(())
    }
}

pub fn variable_names(n: usize) -> Vec<String> {
    if n <= 4 {
        ["X", "Y", "Z", "W"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

fn random_exponents<R: Rng>(rng: &mut R, n: usize, max_degree: u32, squarefree: bool) -> Vec<u16> {
    let mut e = vec![0u16; n];
    if squarefree {
        let k = rng.gen_range(1..=n.min(max_degree as usize));
        let mut idx: Vec<usize> = (0..n).collect();
        idx.shuffle(rng);
        for &i in &idx[..k] {
            e[i] = 1;
        }
    } else {
        let deg = rng.gen_range(1..=max_degree);
        for _ in 0..deg {
            e[rng.gen_range(0..n)] += 1;
        }
    }
    e
}

/// One fixture; fixture `index` depends only on `(seed, index)`.
pub fn generate_fixture(spec: &CorpusSpec, index: usize) -> SessionInput {
    let mut rng = RngSeed(spec.seed).derive(index as u64).rng();
    let n = rng.gen_range(spec.min_nvars..=spec.nvars);
    let names = variable_names(n);
    let ring = PolyRing::default_field(&names).expect("valid generated ring");
    let k = rng.gen_range(1..=spec.max_generators);
    let mut gens: Vec<Vec<u16>> = Vec::new();
    for _ in 0..k {
        let e = random_exponents(&mut rng, n, spec.max_degree, spec.squarefree);
        if !gens.contains(&e) {
            gens.push(e);
        }
    }
    let ideal = gens.iter().map(|e| Polynomial::monomial(&ring, Monomial::new(e)).to_string()).collect();
    let mut input = SessionInput::new(names, DEFAULT_PRIME, ideal);
    input.seed = Some(RngSeed(spec.seed).derive(index as u64).0);
    input.command = Some(CommandSpec::IsCm { method: CmMethod::Both });
    input
}

/// `count` proper monomial ideals, reproducible from the seed. Generators
/// have positive degree, so the unit ideal never occurs.
pub fn generate_corpus(spec: &CorpusSpec) -> Result<Vec<SessionInput>, CorpusError> {
    spec.validate()?;
    Ok((0..spec.count).map(|i| generate_fixture(spec, i)).collect())
}

/// Session text for a corpus: documents separated by `---`.
pub fn render_corpus(corpus: &[SessionInput]) -> String {
    corpus.iter().map(|s| s.render()).collect::<Vec<_>>().join("---\n")
}
