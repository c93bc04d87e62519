//! Benchmark workloads for the `engine` bench target.

use std::sync::Arc;

use redsop_core::{CyclicModule, Ideal, PolyRing, Polynomial};

pub use redsop_core;

fn ring(names: &[&str]) -> Arc<PolyRing> {
    PolyRing::default_field(names).expect("valid ring")
}

/// Homogenized cyclic-n roots generators in `n + 1` variables.
pub fn cyclic_homogeneous(n: usize) -> (Arc<PolyRing>, Vec<Polynomial>) {
    let mut names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    names.push("h".into());
    let r = PolyRing::default_field(&names).expect("valid ring");
    let mut gens = Vec::with_capacity(n);
    for k in 1..n {
        let terms: Vec<String> =
            (0..n).map(|i| (0..k).map(|j| format!("x{}", (i + j) % n)).collect::<Vec<_>>().join("*")).collect();
        gens.push(terms.join(" + "));
    }
    let all: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    gens.push(format!("{} - h^{n}", all.join("*")));
    let ideal = Ideal::parse(&r, &gens).expect("valid generators");
    let gens = ideal.gens().to_vec();
    (r, gens)
}

/// The two-component example `(XY, XZ)` in three variables.
pub fn worked_example() -> CyclicModule {
    CyclicModule::parse(&ring(&["X", "Y", "Z"]), &["X*Y", "X*Z"]).expect("proper homogeneous ideal")
}

/// A non-monomial module of dimension 2 with an embedded component.
pub fn mixed_module() -> CyclicModule {
    CyclicModule::parse(&ring(&["X", "Y", "Z", "W"]), &["X^2 - Y*Z", "X*W", "W^2"]).expect("proper homogeneous ideal")
}

/// Stanley-Reisner ideal of a 4-cycle: Cohen-Macaulay of dimension 2.
pub fn cm_module() -> CyclicModule {
    CyclicModule::parse(&ring(&["X", "Y", "Z", "W"]), &["X*Z", "Y*W"]).expect("proper homogeneous ideal")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn workloads_build() {
        let (r, gens) = cyclic_homogeneous(4);
        assert_eq!(r.nvars(), 5);
        assert_eq!(gens.len(), 4);
        assert_eq!(worked_example().dim(), 2);
        assert_eq!(cm_module().dim(), 2);
        assert_eq!(mixed_module().dim(), 2);
    }
}
