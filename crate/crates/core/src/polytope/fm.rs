//! Exact feasibility of `a_i . x >= b_i` systems by Fourier-Motzkin
//! elimination. Only meant for the small systems met at desk scale.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::algebra::Rational;

pub(crate) type Constraint = (Vec<Rational>, Rational);

/// Scales so the first nonzero coefficient has absolute value one.
fn normalize((a, b): Constraint) -> Constraint {
    match a.iter().find(|c| !c.is_zero()) {
        Some(lead) => {
            let s = Rational::one() / lead.abs();
            (a.iter().map(|c| c * &s).collect(), b * s)
        }
        None => (a, b),
    }
}

pub(crate) fn feasible(system: &[Constraint]) -> bool {
    let Some(n) = system.first().map(|c| c.0.len()) else {
        return true;
    };
    let mut current: BTreeSet<Constraint> = system.iter().cloned().map(normalize).collect();
    for var in (0..n).rev() {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut next = BTreeSet::new();
        for c in current {
            if c.0.iter().all(Zero::is_zero) {
                if c.1.is_positive() {
                    return false;
                }
                continue;
            }
            match c.0[var].partial_cmp(&Rational::zero()) {
                Some(std::cmp::Ordering::Greater) => pos.push(c),
                Some(std::cmp::Ordering::Less) => neg.push(c),
                _ => {
                    next.insert(c);
                }
            }
        }
        for (pa, pb) in &pos {
            for (na, nb) in &neg {
                // pa[var] * x_var >= ..., na[var] * x_var >= ...; combine to cancel x_var
                let sp = -&na[var];
                let sn = pa[var].clone();
                let a: Vec<Rational> = pa.iter().zip(na).map(|(p, q)| p * &sp + q * &sn).collect();
                let b = pb * &sp + nb * &sn;
                next.insert(normalize((a, b)));
            }
        }
        current = next;
    }
    current.iter().all(|(_, b)| !b.is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn c(a: &[i64], b: i64) -> Constraint {
        (a.iter().map(|&e| rat(e)).collect(), rat(b))
    }

    #[test]
    fn small_systems() {
        assert!(feasible(&[c(&[1, 0], 0), c(&[0, 1], 0), c(&[-1, -1], -1)]));
        assert!(!feasible(&[c(&[1], 0), c(&[-1], 1)]));
        assert!(!feasible(&[
            c(&[1, 1], 3),
            c(&[-1, 0], -1),
            c(&[0, -1], -1)
        ]));
        assert!(feasible(&[c(&[1, 1], 2), c(&[-1, 0], -1), c(&[0, -1], -1)]));
        assert!(feasible(&[]));
    }
}
