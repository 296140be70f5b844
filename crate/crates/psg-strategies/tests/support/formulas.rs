#![allow(dead_code)]

use std::collections::BTreeSet;

use psg_kernel::{taut, Term, Ty};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const ATOMS: [&str; 4] = ["A", "B", "C", "D"];

pub fn rand_prop(rng: &mut impl Rng, depth: u32) -> Term {
    if depth == 0 || rng.gen_ratio(1, 4) {
        return match rng.gen_range(0..12) {
            0 => Term::truth(),
            1 => Term::falsity(),
            _ => Term::var(ATOMS[rng.gen_range(0..4)], Ty::Bool),
        };
    }
    let a = rand_prop(rng, depth - 1);
    let k = rng.gen_range(0..6);
    let mut b = || rand_prop(rng, depth - 1);
    match k {
        0 => Term::mk_neg(&a).unwrap(),
        1 => Term::mk_conj(&a, &b()).unwrap(),
        2 => Term::mk_disj(&a, &b()).unwrap(),
        3 => Term::mk_imp(&a, &b()).unwrap(),
        4 => Term::mk_iff(&a, &b()).unwrap(),
        _ => {
            let (x, y) = (b(), b());
            Term::mk_ite(&a, &x, &y).unwrap()
        }
    }
}

pub fn truth_table(t: &Term) -> bool {
    let vars: Vec<psg_kernel::Var> = ATOMS.iter().map(|a| psg_kernel::Var::new(a, Ty::Bool)).collect();
    (0..16u32).all(|bits| {
        let val: Vec<_> = vars.iter().enumerate().map(|(i, v)| (v.clone(), bits & (1 << i) != 0)).collect();
        taut::eval_with(t, &val).unwrap()
    })
}

/// Half tautologies: a random formula is kept if it is one, otherwise it
/// is turned into one often enough to balance the sample.
pub fn sample(n: usize, seed: u64) -> Vec<(Term, bool)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    while out.len() < n {
        let mut t = rand_prop(&mut rng, 5);
        if out.len() % 2 == 0 && !truth_table(&t) {
            // p => p and p \/ ~p style closures keep the depth bounded
            let a = rand_prop(&mut rng, 3);
            t = match rng.gen_range(0..3) {
                0 => Term::mk_imp(&a, &Term::mk_disj(&a, &rand_prop(&mut rng, 2)).unwrap()).unwrap(),
                1 => Term::mk_disj(&a, &Term::mk_neg(&a).unwrap()).unwrap(),
                _ => Term::mk_imp(&Term::mk_conj(&a, &rand_prop(&mut rng, 2)).unwrap(), &a).unwrap(),
            };
        }
        if seen.insert(t.to_string()) {
            let tt = truth_table(&t);
            out.push((t, tt));
        }
    }
    out
}
