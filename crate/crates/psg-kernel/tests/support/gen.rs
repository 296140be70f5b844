#![allow(dead_code)]

use psg_kernel::taut;
use psg_kernel::thm::{self, Thm};
use psg_kernel::{KernelError, Term, Ty};
use rand::Rng;

pub const ATOMS: [&str; 4] = ["A", "B", "C", "D"];

pub fn atom(i: usize) -> Term {
    Term::var(ATOMS[i % ATOMS.len()], Ty::Bool)
}

pub fn rand_prop(rng: &mut impl Rng, depth: u32) -> Term {
    if depth == 0 || rng.gen_ratio(1, 4) {
        return match rng.gen_range(0..10) {
            0 => Term::truth(),
            1 => Term::falsity(),
            _ => atom(rng.gen_range(0..ATOMS.len())),
        };
    }
    let a = rand_prop(rng, depth - 1);
    match rng.gen_range(0..6) {
        0 => Term::mk_neg(&a).unwrap(),
        1 => Term::mk_conj(&a, &rand_prop(rng, depth - 1)).unwrap(),
        2 => Term::mk_disj(&a, &rand_prop(rng, depth - 1)).unwrap(),
        3 => Term::mk_imp(&a, &rand_prop(rng, depth - 1)).unwrap(),
        4 => Term::mk_iff(&a, &rand_prop(rng, depth - 1)).unwrap(),
        _ => Term::mk_ite(&a, &rand_prop(rng, depth - 1), &rand_prop(rng, depth - 1)).unwrap(),
    }
}

pub fn sound(th: &Thm) -> bool {
    taut::counterexample(th.hyps(), th.concl()).unwrap().is_none()
}

pub fn pick<'a>(rng: &mut impl Rng, pool: &'a [Thm]) -> &'a Thm {
    &pool[rng.gen_range(0..pool.len())]
}

/// Apply one random rule to random arguments, biased towards shapes that fit.
pub fn random_step(rng: &mut impl Rng, pool: &[Thm]) -> Result<Thm, KernelError> {
    let id = thm::ND_RULES[rng.gen_range(0..thm::ND_RULES.len())];
    let mut thms: Vec<Thm> = (0..3).map(|_| pick(rng, pool).clone()).collect();
    let mut terms = vec![rand_prop(rng, 2)];
    match id {
        "imp_intro" if rng.gen_bool(0.7) && !thms[0].hyps().is_empty() => {
            let hs = thms[0].hyps();
            terms[0] = hs[rng.gen_range(0..hs.len())].clone();
        }
        "imp_elim" | "neg_elim" | "eq_mp" | "iff_intro" => {
            // try to find a matching partner for the first theorem
            let partner = pool.iter().find(|t| match id {
                "imp_elim" => thms[0].concl().dest_imp().is_some_and(|(a, _)| a.aconv(t.concl())),
                "neg_elim" => t.concl().dest_neg().is_some_and(|a| a.aconv(thms[0].concl())),
                "eq_mp" => thms[0].concl().dest_iff().is_some_and(|(a, _)| a.aconv(t.concl())),
                _ => thms[0].concl().dest_imp().is_some_and(|(a, b)| {
                    t.concl().dest_imp().is_some_and(|(b2, a2)| a.aconv(a2) && b.aconv(b2))
                }),
            });
            if let Some(p) = partner {
                thms[1] = p.clone();
            }
        }
        "disj_elim" => {
            if let Some(c) = pool.iter().find(|t| t.concl().aconv(thms[1].concl()) && !std::ptr::eq(*t, &thms[1])) {
                thms[2] = c.clone();
            }
        }
        _ => {}
    }
    thm::nd_rule(id, &thms, &terms)
}
