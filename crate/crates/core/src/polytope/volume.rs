//! Brute-force oracles: exact volume by recursion over facets, and lattice
//! points by scanning the bounding box.

use num_traits::{Signed, ToPrimitive, Zero};

use super::{affine_dim, enumerate_vertices, HalfSpace, LatticeBox, Polytope};
use crate::algebra::{Rational, RationalVec};
use crate::error::{Error, Result};

impl Polytope {
    /// Euclidean volume, computed as a sum of pyramids over facets from a
    /// base vertex: `vol(P) = (1/n) sum_F h_F vol(F)`.
    ///
    /// Each facet is projected along a coordinate axis on which its normal is
    /// nonzero; height times facet volume then equals
    /// `(<a, p0> - b) / |a_j| * vol(projected facet)`, which stays rational.
    pub fn volume_oracle(&self) -> Result<Rational> {
        if !self.is_full_dimensional() {
            return Err(Error::Degenerate("polytope is not full-dimensional".into()));
        }
        Ok(volume_rec(self.dim, &self.halfspaces))
    }

    /// All integer points of the polytope, by scanning its tight bounding box.
    pub fn lattice_points_oracle(&self) -> Result<Vec<Vec<i64>>> {
        let bx = LatticeBox::tight(self)?;
        let mut out = Vec::new();
        match integer_constraints(&self.halfspaces) {
            Some(rows) => bx.for_each_point(|x| {
                let inside = rows.iter().all(|(a, b)| {
                    a.iter()
                        .zip(x)
                        .map(|(ai, xi)| ai * (*xi as i128))
                        .sum::<i128>()
                        >= *b
                });
                if inside {
                    out.push(x.to_vec());
                }
            }),
            None => bx.for_each_point(|x| {
                if self.contains(&RationalVec::from_i64(x)) {
                    out.push(x.to_vec());
                }
            }),
        }
        Ok(out)
    }

    pub fn lattice_count_oracle(&self) -> Result<usize> {
        Ok(self.lattice_points_oracle()?.len())
    }
}

/// `a . x >= ceil(b)` with `a` integral, if every number fits comfortably in i64.
fn integer_constraints(hs: &[HalfSpace]) -> Option<Vec<(Vec<i128>, i128)>> {
    hs.iter()
        .map(|h| {
            let a = h
                .normal
                .to_integers()?
                .iter()
                .map(|e| e.to_i64().map(i128::from))
                .collect::<Option<Vec<_>>>()?;
            let b = h.offset.ceil().to_integer().to_i64()? as i128;
            Some((a, b))
        })
        .collect()
}

fn volume_rec(dim: usize, hs: &[HalfSpace]) -> Rational {
    let found = enumerate_vertices(dim, hs);
    if dim == 1 {
        let xs: Vec<&Rational> = found.iter().map(|(v, _)| &v[0]).collect();
        return match (xs.iter().min(), xs.iter().max()) {
            (Some(lo), Some(hi)) => (*hi).clone() - (*lo).clone(),
            _ => Rational::zero(),
        };
    }
    let Some((base, _)) = found.first() else {
        return Rational::zero();
    };
    let mut total = Rational::zero();
    for (f, h) in hs.iter().enumerate() {
        let height = h.normal.dot(base) - &h.offset;
        if height.is_zero() {
            continue;
        }
        let on_facet: Vec<&RationalVec> = found
            .iter()
            .filter(|(_, act)| act.contains(&f))
            .map(|(v, _)| v)
            .collect();
        if affine_dim(&on_facet) != Some(dim - 1) {
            continue;
        }
        let j = (0..dim).find(|&j| !h.normal[j].is_zero()).unwrap();
        let projected = project_onto_facet(hs, f, j);
        total += height / h.normal[j].abs() * volume_rec(dim - 1, &projected);
    }
    total / Rational::from_integer(dim.into())
}

/// Constraints of `hs` restricted to `hs[f]` at equality, with coordinate
/// `j` eliminated.
fn project_onto_facet(hs: &[HalfSpace], f: usize, j: usize) -> Vec<HalfSpace> {
    let a = &hs[f].normal;
    let b = &hs[f].offset;
    let aj = &a[j];
    let mut out = Vec::new();
    for (k, h) in hs.iter().enumerate() {
        if k == f {
            continue;
        }
        let cj = &h.normal[j];
        let ratio = cj / aj;
        let normal: Vec<Rational> = (0..a.dim())
            .filter(|&l| l != j)
            .map(|l| &h.normal[l] - &ratio * &a[l])
            .collect();
        let offset = &h.offset - &ratio * b;
        let normal = RationalVec::new(normal);
        if normal.is_zero() {
            // parallel to the facet; satisfied on it by feasibility
            continue;
        }
        let hs = HalfSpace { normal, offset }.normalized();
        if !out.contains(&hs) {
            out.push(hs);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};

    #[test]
    fn volume_examples() {
        assert_eq!(
            Polytope::cube(2, &rat(1)).unwrap().volume_oracle().unwrap(),
            rat(1)
        );
        assert_eq!(
            Polytope::simplex(2, &rat(1))
                .unwrap()
                .volume_oracle()
                .unwrap(),
            ratio(1, 2)
        );
        assert_eq!(
            Polytope::simplex(3, &rat(1))
                .unwrap()
                .volume_oracle()
                .unwrap(),
            ratio(1, 6)
        );
        assert_eq!(
            Polytope::simplex(4, &rat(1))
                .unwrap()
                .volume_oracle()
                .unwrap(),
            ratio(1, 24)
        );
        assert_eq!(
            Polytope::cube(3, &rat(2)).unwrap().volume_oracle().unwrap(),
            rat(8)
        );
        // trapezoid with parallel sides a+1 and 1, height 1
        assert_eq!(
            Polytope::hirzebruch(3).unwrap().volume_oracle().unwrap(),
            ratio(5, 2)
        );
        let pyramid = super::super::tests::square_pyramid();
        assert_eq!(pyramid.volume_oracle().unwrap(), ratio(4, 3));
    }

    #[test]
    fn volume_of_flat_polytope_is_degenerate() {
        let seg = Polytope::from_halfspaces(
            2,
            vec![
                HalfSpace::from_i64(&[1, 0], 0),
                HalfSpace::from_i64(&[-1, 0], -1),
                HalfSpace::from_i64(&[0, 1], 0),
                HalfSpace::from_i64(&[0, -1], 0),
            ],
        )
        .unwrap();
        assert!(matches!(seg.volume_oracle(), Err(Error::Degenerate(_))));
    }

    #[test]
    fn volume_dilation_law() {
        for p in [
            Polytope::hirzebruch(2).unwrap(),
            Polytope::simplex(3, &rat(1)).unwrap(),
        ] {
            let v = p.volume_oracle().unwrap();
            for k in 1..=4i64 {
                let dv = p.dilate(&rat(k)).unwrap().volume_oracle().unwrap();
                assert_eq!(dv, &v * rat(k.pow(p.dim() as u32)));
            }
        }
    }

    #[test]
    fn lattice_examples() {
        assert_eq!(
            Polytope::simplex(2, &rat(1))
                .unwrap()
                .lattice_count_oracle()
                .unwrap(),
            3
        );
        assert_eq!(
            Polytope::cube(2, &rat(2))
                .unwrap()
                .lattice_count_oracle()
                .unwrap(),
            9
        );
        assert_eq!(
            Polytope::simplex(2, &rat(5))
                .unwrap()
                .lattice_count_oracle()
                .unwrap(),
            21
        );
        let mut pts = Polytope::simplex(2, &rat(1))
            .unwrap()
            .lattice_points_oracle()
            .unwrap();
        pts.sort();
        assert_eq!(pts, vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
        // non-integral offsets exercise the ceiling
        assert_eq!(
            Polytope::simplex(2, &ratio(5, 2))
                .unwrap()
                .lattice_count_oracle()
                .unwrap(),
            6
        );
    }
}
