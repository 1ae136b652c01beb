use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{abs_cmp, format_rational, Rational, RationalVec};
use crate::error::{Error, Result};

/// Exponent vector of a monomial. Ordered graded-lexicographically: total
/// degree first, then lexicographically with `x_1 > x_2 > ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// All monomials in `nvars` variables of total degree `k`, in descending
    /// graded-lex order.
    pub fn all_of_degree(nvars: usize, k: u32) -> Vec<Monomial> {
        fn rec(rest: usize, k: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if rest == 1 {
                prefix.push(k);
                out.push(Monomial(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in (0..=k).rev() {
                prefix.push(e);
                rec(rest - 1, k - e, prefix, out);
                prefix.pop();
            }
        }
        if nvars == 0 {
            return if k == 0 {
                vec![Monomial(vec![])]
            } else {
                vec![]
            };
        }
        let mut out = Vec::new();
        rec(nvars, k, &mut Vec::with_capacity(nvars), &mut out);
        out
    }

    pub fn eval(&self, x: &RationalVec) -> Rational {
        self.0
            .iter()
            .zip(x.iter())
            .filter(|(e, _)| **e > 0)
            .fold(Rational::one(), |acc, (&e, xi)| {
                acc * num_traits::pow(xi.clone(), e as usize)
            })
    }

    /// Comma separated exponents, e.g. `"2,0"`.
    pub fn to_exponent_string(&self) -> String {
        self.0
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse_exponent_string(s: &str) -> Result<Self> {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad exponent string {s:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over Q. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(Monomial::one(nvars), c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(Monomial::var(nvars, i), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let nvars = m.0.len();
        let mut p = Self::zero(nvars);
        p.add_term(m, c);
        p
    }

    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            if m.0.len() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: m.0.len(),
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree, with the zero polynomial at -1.
    pub fn degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|m| m.degree() as i64)
            .max()
            .unwrap_or(-1)
    }

    /// `Some(k)` if every term has degree `k`. The zero polynomial is
    /// homogeneous of every degree and reports `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &RationalVec) -> Rational {
        assert_eq!(x.dim(), self.nvars, "evaluation point has wrong dimension");
        self.terms
            .iter()
            .fold(Rational::zero(), |acc, (m, c)| acc + c * m.eval(x))
    }

    /// Replaces the variable `var` by the polynomial `g`.
    pub fn substitute(&self, var: usize, g: &MultiPoly) -> MultiPoly {
        let mut powers: Vec<MultiPoly> = vec![MultiPoly::one(self.nvars)];
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * g;
                powers.push(next);
            }
            let mut rest = m.clone();
            rest.0[var] = 0;
            for (pm, pc) in &powers[e].terms {
                out.add_term(rest.mul(pm), c * pc);
            }
        }
        out
    }

    /// Restriction of `self` to the hyperplane `ell = 0`, obtained by solving
    /// `ell = 0` for its pivot variable and substituting. The result no longer
    /// involves the pivot variable.
    pub fn restrict_to_hyperplane(&self, ell: &LinearForm) -> Result<MultiPoly> {
        let pivot = ell.pivot().ok_or(Error::ZeroLinearForm)?;
        Ok(self.substitute(pivot, &ell.solve_for_pivot(pivot)))
    }

    /// True iff `ell` divides `self` in Q[x_1, ..., x_n].
    pub fn divisible_by(&self, ell: &LinearForm) -> Result<bool> {
        self.check_nvars(ell)?;
        Ok(self.restrict_to_hyperplane(ell)?.is_zero())
    }

    /// Exact quotient `g` with `self = ell * g`.
    ///
    /// Division runs with the pivot variable of `ell` as the leading variable:
    /// terms are cancelled in order of decreasing pivot exponent. A nonzero
    /// remainder means `ell` does not divide.
    pub fn quotient_by_linear(&self, ell: &LinearForm) -> Result<MultiPoly> {
        self.check_nvars(ell)?;
        let pivot = ell.pivot().ok_or(Error::ZeroLinearForm)?;
        let lead = ell.coefficients()[pivot].clone();
        let ell_poly = ell.to_poly();
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.nvars);
        loop {
            let top = rem
                .terms
                .iter()
                .filter(|(m, _)| m.0[pivot] > 0)
                .max_by(|(a, _), (b, _)| a.0[pivot].cmp(&b.0[pivot]).then_with(|| a.cmp(b)))
                .map(|(m, c)| (m.clone(), c.clone()));
            let Some((m, c)) = top else { break };
            let mut qm = m;
            qm.0[pivot] -= 1;
            let qc = c / &lead;
            let step = MultiPoly::monomial(qm.clone(), qc.clone());
            rem = &rem - &(&ell_poly * &step);
            quot.add_term(qm, qc);
        }
        if !rem.is_zero() {
            return Err(Error::NotDivisible(ell.to_string()));
        }
        Ok(quot)
    }

    fn check_nvars(&self, ell: &LinearForm) -> Result<()> {
        if ell.dim() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: ell.dim(),
            });
        }
        Ok(())
    }
}

/// Divisibility of `f` by the linear form `ell`.
pub fn divides_linear(ell: &LinearForm, f: &MultiPoly) -> Result<bool> {
    f.divisible_by(ell)
}

/// Exact quotient `f / ell`; errors if `ell` does not divide `f`.
pub fn poly_quotient_by_linear(ell: &LinearForm, f: &MultiPoly) -> Result<MultiPoly> {
    f.quotient_by_linear(ell)
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

pub(crate) fn var_name(nvars: usize, i: usize) -> String {
    const SHORT: [&str; 4] = ["x", "y", "z", "w"];
    if nvars <= SHORT.len() {
        SHORT[i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let vars: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, e)| **e > 0)
                    .map(|(i, &e)| {
                        let v = var_name(self.nvars, i);
                        if e == 1 {
                            v
                        } else {
                            format!("{v}^{e}")
                        }
                    })
                    .collect();
            if vars.is_empty() {
                write!(f, "{}", format_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rational(&a), vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Homogeneous linear polynomial `sum c_i x_i`, e.g. an edge weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinearForm(RationalVec);

impl LinearForm {
    pub fn new(coefficients: RationalVec) -> Self {
        LinearForm(coefficients)
    }

    pub fn coefficients(&self) -> &RationalVec {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn eval(&self, x: &RationalVec) -> Rational {
        self.0.dot(x)
    }

    pub fn neg(&self) -> LinearForm {
        LinearForm(-&self.0)
    }

    pub fn to_poly(&self) -> MultiPoly {
        let n = self.dim();
        let mut p = MultiPoly::zero(n);
        for (i, c) in self.0.iter().enumerate() {
            p.add_term(Monomial::var(n, i), c.clone());
        }
        p
    }

    /// Variable eliminated when restricting to `self = 0`: the largest
    /// coefficient in absolute value, lowest index on ties.
    pub fn pivot(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match best {
                Some(b) if abs_cmp(c, &self.0[b]) != Ordering::Greater => {}
                _ => best = Some(i),
            }
        }
        best
    }

    /// `x_pivot` expressed through the other variables on `self = 0`.
    fn solve_for_pivot(&self, pivot: usize) -> MultiPoly {
        let n = self.dim();
        let lead = &self.0[pivot];
        let mut p = MultiPoly::zero(n);
        for (i, c) in self.0.iter().enumerate() {
            if i != pivot {
                p.add_term(Monomial::var(n, i), -(c / lead));
            }
        }
        p
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn x() -> MultiPoly {
        MultiPoly::var(2, 0)
    }
    fn y() -> MultiPoly {
        MultiPoly::var(2, 1)
    }
    fn lf(c: &[i64]) -> LinearForm {
        LinearForm::new(RationalVec::from_i64(c))
    }

    #[test]
    fn divides_examples() {
        let f = &(&x() * &x()) + &(&x() * &y());
        assert!(divides_linear(&lf(&[1, 0]), &f).unwrap());
        let g = &(&x() * &x()) - &(&y() * &y());
        assert!(divides_linear(&lf(&[1, -1]), &g).unwrap());
        assert!(!divides_linear(&lf(&[1, 0]), &y()).unwrap());
        assert_eq!(
            divides_linear(&lf(&[0, 0]), &y()),
            Err(Error::ZeroLinearForm)
        );
    }

    #[test]
    fn quotient_examples() {
        let x1 = MultiPoly::var(1, 0);
        let l1 = LinearForm::new(RationalVec::from_i64(&[1]));
        assert_eq!(poly_quotient_by_linear(&l1, &(&x1 * &x1)).unwrap(), x1);
        let g = &(&x() * &x()) - &(&y() * &y());
        assert_eq!(
            poly_quotient_by_linear(&lf(&[1, -1]), &g).unwrap(),
            &x() + &y()
        );
        assert!(poly_quotient_by_linear(&lf(&[0, 1]), &MultiPoly::zero(2))
            .unwrap()
            .is_zero());
        assert!(matches!(
            poly_quotient_by_linear(&lf(&[1, 0]), &y()),
            Err(Error::NotDivisible(_))
        ));
    }

    #[test]
    fn pivot_prefers_largest_then_lowest_index() {
        assert_eq!(lf(&[1, -3, 3]).pivot(), Some(1));
        assert_eq!(lf(&[2, -2]).pivot(), Some(0));
        assert_eq!(lf(&[0, 0]).pivot(), None);
    }

    #[test]
    fn degree_conventions() {
        assert_eq!(MultiPoly::zero(2).degree(), -1);
        assert_eq!(MultiPoly::one(2).degree(), 0);
        let f = &(&x() * &y()) + &x();
        assert_eq!(f.degree(), 2);
        assert_eq!(f.homogeneous_degree(), None);
        assert_eq!((&x() * &y()).homogeneous_degree(), Some(2));
    }

    #[test]
    fn grlex_printing() {
        let f = MultiPoly::from_terms(
            2,
            vec![
                (Monomial::new(vec![0, 0]), rat(1)),
                (Monomial::new(vec![0, 2]), ratio(-3, 2)),
                (Monomial::new(vec![1, 1]), rat(1)),
                (Monomial::new(vec![1, 0]), rat(-1)),
                (Monomial::new(vec![2, 0]), rat(2)),
            ],
        )
        .unwrap();
        assert_eq!(f.to_string(), "2*x^2 + x*y - 3/2*y^2 - x + 1");
        assert_eq!(MultiPoly::zero(3).to_string(), "0");
    }

    #[test]
    fn monomials_of_degree() {
        let ms = Monomial::all_of_degree(3, 2);
        assert_eq!(ms.len(), 6);
        assert!(ms.windows(2).all(|w| w[0] > w[1]));
        assert_eq!(Monomial::all_of_degree(1, 4).len(), 1);
        assert_eq!(
            Monomial::parse_exponent_string("2, 0").unwrap(),
            Monomial::new(vec![2, 0])
        );
        assert_eq!(Monomial::new(vec![2, 0]).to_exponent_string(), "2,0");
    }

    fn arb_poly(nvars: usize) -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec(
            (prop::collection::vec(0u32..3, nvars), -5i64..6, 1i64..4),
            0..6,
        )
        .prop_map(move |ts| {
            MultiPoly::from_terms(
                nvars,
                ts.into_iter()
                    .map(|(e, n, d)| (Monomial::new(e), ratio(n, d))),
            )
            .unwrap()
        })
    }

    fn arb_form(nvars: usize) -> impl Strategy<Value = LinearForm> {
        prop::collection::vec(-4i64..5, nvars)
            .prop_filter("nonzero", |c| c.iter().any(|&e| e != 0))
            .prop_map(|c| LinearForm::new(RationalVec::from_i64(&c)))
    }

    /// Zero test at random rational points on `ell = 0`.
    fn vanishes_on_hyperplane(ell: &LinearForm, f: &MultiPoly, rng: &mut ChaCha8Rng) -> bool {
        let n = ell.dim();
        let pivot = ell
            .coefficients()
            .iter()
            .position(|c| !c.is_zero())
            .unwrap();
        (0..50).all(|_| {
            let mut pt: Vec<Rational> = (0..n)
                .map(|_| ratio(rng.gen_range(-50..50), rng.gen_range(1..9)))
                .collect();
            let rest = (0..n)
                .filter(|&i| i != pivot)
                .fold(Rational::zero(), |acc, i| {
                    acc + &ell.coefficients()[i] * &pt[i]
                });
            pt[pivot] = -rest / &ell.coefficients()[pivot];
            f.eval(&RationalVec::new(pt)).is_zero()
        })
    }

    proptest! {
        #[test]
        fn product_round_trip(f in arb_poly(3), ell in arb_form(3)) {
            let prod = &ell.to_poly() * &f;
            prop_assert!(divides_linear(&ell, &prod).unwrap());
            prop_assert_eq!(poly_quotient_by_linear(&ell, &prod).unwrap(), f);
        }

        #[test]
        fn exact_test_agrees_with_point_sampling(f in arb_poly(3), ell in arb_form(3), seed in 0u64..1000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let exact = divides_linear(&ell, &f).unwrap();
            prop_assert_eq!(exact, vanishes_on_hyperplane(&ell, &f, &mut rng));
            // mixing in a multiple of ell never changes the verdict
            let g = &f + &(&ell.to_poly() * &f);
            prop_assert_eq!(divides_linear(&ell, &g).unwrap(), exact);
        }

        #[test]
        fn evaluation_is_multiplicative(f in arb_poly(2), g in arb_poly(2), a in -9i64..9, b in -9i64..9) {
            let pt = RationalVec::new(vec![ratio(a, 2), ratio(b, 3)]);
            prop_assert_eq!((&f * &g).eval(&pt), f.eval(&pt) * g.eval(&pt));
            prop_assert_eq!((&f + &g).eval(&pt), f.eval(&pt) + g.eval(&pt));
        }
    }
}
