//! Descriptor sets shared by the integration tests.
#![allow(dead_code)]

use nichols_core::braiding::{FamilyDescriptor, Variant};

/// One descriptor per catalog entry of kind `distinguished`, chosen so that
/// its guard holds.
pub fn samples() -> Vec<FamilyDescriptor> {
    use FamilyDescriptor::*;
    use Variant::*;
    let mut v = vec![
        CartanG2 { order: 4, q: 1 },
        CartanG2 { order: 6, q: 1 },
        CartanG2 { order: 5, q: 1 },
        SuperA { theta: 4, order: 5, j: vec![2], q: 1 },
        SuperB { theta: 3, order: 5, j: vec![1], q: 1 },
        SuperB { theta: 3, order: 3, j: vec![2], q: 1 },
        SuperD { theta: 4, order: 5, j: vec![1], variant: C, q: 1 },
        SuperD { theta: 4, order: 4, j: vec![2], variant: C, q: 1 },
        SuperD { theta: 4, order: 3, j: vec![1], variant: C, q: 1 },
        SuperD { theta: 4, order: 5, j: vec![2, 3], variant: C, q: 1 },
        SuperD { theta: 4, order: 4, j: vec![1, 3], variant: C, q: 1 },
        SuperD { theta: 4, order: 5, j: vec![3], variant: D1, q: 1 },
        SuperD { theta: 4, order: 4, j: vec![3], variant: D1, q: 1 },
        SuperD { theta: 4, order: 5, j: vec![2, 3], variant: D1, q: 1 },
        SuperD { theta: 4, order: 4, j: vec![2, 3], variant: D1, q: 1 },
        SuperD { theta: 4, order: 5, j: vec![1], variant: D2, q: 1 },
        SuperD { theta: 4, order: 5, j: vec![2], variant: D2, q: 1 },
        D21Alpha { order: 7, variant: A, q: 1, r: 2 },
        D21Alpha { order: 6, variant: A, q: 3, r: 1 },
        D21Alpha { order: 7, variant: B, q: 1, r: 2 },
        StdB { theta: 3, order: 6, j: vec![1] },
        StdG2 { order: 8, variant: A, q: 1 },
        StdG2 { order: 8, variant: B, q: 1 },
        StdG2 { order: 8, variant: C, q: 1 },
    ];
    for variant in [A, B, C, D, E, F] {
        for order in [4, 5, 6] {
            v.push(F4 { order, variant, q: 1 });
        }
    }
    for variant in [A, B, C, D] {
        for order in [4, 5, 6] {
            v.push(G3 { order, variant, q: 1 });
        }
    }
    v
}

pub fn subsets(n: usize) -> Vec<Vec<usize>> {
    (1u32..(1 << n)).map(|m| (1..=n).filter(|i| m & (1 << (i - 1)) != 0).collect()).collect()
}

/// A wider grid of admissible descriptors for the case-split checks.
pub fn grid() -> Vec<FamilyDescriptor> {
    use FamilyDescriptor::*;
    use Variant::*;
    let mut v = Vec::new();
    for order in [4, 5, 6, 7, 8, 12] {
        v.push(CartanG2 { order, q: 1 });
        for variant in [A, B, C, D, E, F] {
            v.push(F4 { order, variant, q: 1 });
        }
        for variant in [A, B, C, D] {
            v.push(G3 { order, variant, q: 1 });
        }
    }
    for order in [3, 4, 5, 6] {
        for theta in 2..=4 {
            for j in subsets(theta) {
                v.push(SuperA { theta, order, j: j.clone(), q: 1 });
            }
            for j in subsets(theta - 1) {
                if order != 4 {
                    v.push(SuperB { theta, order, j: j.clone(), q: 1 });
                }
            }
        }
        for theta in 3..=5 {
            for j in subsets(theta - 1) {
                v.push(SuperD { theta, order, j: j.clone(), variant: C, q: 1 });
                if j.contains(&(theta - 1)) {
                    v.push(SuperD { theta, order, j: j.clone(), variant: D1, q: 1 });
                } else {
                    v.push(SuperD { theta, order, j: j.clone(), variant: D2, q: 1 });
                }
            }
        }
    }
    for (order, q, r) in [(7, 1, 2), (6, 3, 1), (8, 4, 1), (9, 2, 3), (10, 5, 2)] {
        v.push(D21Alpha { order, variant: A, q, r });
        v.push(D21Alpha { order, variant: B, q, r });
    }
    for theta in 2..=4 {
        for j in subsets(theta - 1) {
            v.push(StdB { theta, order: 6, j });
        }
    }
    for variant in [A, B, C] {
        v.push(StdG2 { order: 8, variant, q: 1 });
        v.push(StdG2 { order: 8, variant, q: 3 });
    }
    v
}

pub mod strategies {
    use nichols_core::braiding::BraidingMatrix;
    use nichols_core::cyclo::CycScalar;
    use nichols_core::freealg::{FreeElement, Word};
    use proptest::prelude::*;

    /// An arbitrary `θ × θ` matrix of exponents of `ζ_m`.
    pub fn matrix(theta: usize, m: u32) -> impl Strategy<Value = BraidingMatrix> {
        prop::collection::vec(prop::collection::vec(0..m as i64, theta), theta)
            .prop_map(move |e| BraidingMatrix::new(m, e).expect("exponents are in range"))
    }

    /// A homogeneous element of degree 1 to 3 together with its multidegree.
    /// Every term is a permutation of the same multiset of letters with a
    /// coefficient `±k ζ_m^e`.
    pub fn homogeneous(theta: usize, m: u32) -> impl Strategy<Value = (FreeElement, Vec<i64>)> {
        (
            prop::collection::vec(0..theta as u8, 1..=3),
            prop::collection::vec((any::<u32>(), 0..m as i64, -3i64..=3), 1..=3),
        )
            .prop_map(move |(letters, terms)| {
                let mut deg = vec![0i64; theta];
                for &l in &letters {
                    deg[l as usize] += 1;
                }
                let mut el = FreeElement::zero();
                for (seed, e, k) in terms {
                    let mut w = letters.clone();
                    for i in (1..w.len()).rev() {
                        let j = (seed >> (4 * i)) as usize % (i + 1);
                        w.swap(i, j);
                    }
                    el.add_term(Word::from_letters(&w), &CycScalar::root_of_unity(m, e) * &CycScalar::from_int(k));
                }
                (el, deg)
            })
    }
}
