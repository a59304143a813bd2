#![allow(dead_code)]

use monoheight::heightkit::PointGm;
use monoheight::matkit::IntMatrix;
use monoheight::numkit::Rat;
use num_bigint::BigInt;
use rand::Rng;

pub fn m(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_i64(rows).unwrap()
}

pub fn fib() -> IntMatrix {
    m(&[&[1, 1], &[1, 0]])
}

pub fn unipotent() -> IntMatrix {
    m(&[&[1, 1], &[0, 1]])
}

pub fn diag23() -> IntMatrix {
    m(&[&[2, 0], &[0, 3]])
}

pub fn jordan2() -> IntMatrix {
    m(&[&[2, 1], &[0, 2]])
}

pub fn pt(c: &[(i64, i64)]) -> PointGm {
    PointGm::from_i64(c).unwrap()
}

/// Entries in `[-bound, bound]`, redrawn until the determinant is nonzero.
pub fn random_matrix<R: Rng>(rng: &mut R, n: usize, bound: i64) -> IntMatrix {
    loop {
        let rows: Vec<Vec<BigInt>> =
            (0..n).map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect()).collect();
        if let Ok(a) = IntMatrix::new(rows) {
            return a;
        }
    }
}

const COORDS: [(i64, i64); 10] = [(1, 1), (-1, 1), (2, 1), (-2, 1), (3, 1), (-3, 1), (1, 2), (-1, 2), (2, 3), (-2, 3)];

pub fn random_point<R: Rng>(rng: &mut R, n: usize) -> PointGm {
    let c: Vec<(i64, i64)> = (0..n).map(|_| COORDS[rng.gen_range(0..COORDS.len())]).collect();
    pt(&c)
}

pub fn random_rat<R: Rng>(rng: &mut R, bound: i64) -> Rat {
    loop {
        let n: i64 = rng.gen_range(-bound..=bound);
        let d: i64 = rng.gen_range(1..=bound);
        if n != 0 {
            return Rat::new(n.into(), d.into());
        }
    }
}

pub mod strategies {
    use super::*;
    use proptest::prelude::*;

    /// Nonsingular `n x n` integer matrices with entries in `[-bound, bound]`.
    pub fn matrix(n: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
        proptest::collection::vec(-bound..=bound, n * n).prop_filter_map("singular", move |e| {
            let rows: Vec<Vec<BigInt>> = e.chunks(n).map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            IntMatrix::new(rows).ok()
        })
    }

    pub fn matrix_of_dim(dims: std::ops::RangeInclusive<usize>, bound: i64) -> impl Strategy<Value = IntMatrix> {
        dims.prop_flat_map(move |n| matrix(n, bound))
    }

    pub fn coord() -> impl Strategy<Value = (i64, i64)> {
        (prop_oneof![-30i64..=-1, 1i64..=30], 1i64..=12)
    }

    pub fn point(n: usize) -> impl Strategy<Value = PointGm> {
        proptest::collection::vec(coord(), n).prop_map(|c| pt(&c))
    }

    /// A matrix together with a point of matching dimension.
    pub fn matrix_and_point(dims: std::ops::RangeInclusive<usize>, bound: i64) -> impl Strategy<Value = (IntMatrix, PointGm)> {
        dims.prop_flat_map(move |n| (matrix(n, bound), point(n)))
    }

    pub fn nonzero_rat() -> impl Strategy<Value = Rat> {
        (prop_oneof![-1_000_000_007i64..=-1, 1i64..=1_000_000_007], 1i64..=1_000_000_007)
            .prop_map(|(n, d)| Rat::new(n.into(), d.into()))
    }
}
