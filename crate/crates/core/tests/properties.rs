mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use frobcat::cli::ModuleSpec;
use frobcat::exactla::{Fp, IdMinusPerm, PrimeMatrix};
use frobcat::frobenius::{frobenius_components, CyclicPower};
use frobcat::nilmod::{multiplicity_vector, partitions, random_invertible, JordanType, NilModule};
use frobcat::repcat::GroupRep;
use frobcat::series::hilbert_coeffs;
use frobcat::verlinde::{fusion_matrix, fusion_simple, semisimplify_rep, FusionElement};

const PRIMES: [u32; 4] = [2, 3, 5, 7];

fn to_mat(m: &PrimeMatrix) -> common::Mat {
    m.to_rows().into_iter().map(|r| r.into_iter().map(u64::from).collect()).collect()
}

fn arb_matrix() -> impl Strategy<Value = PrimeMatrix> {
    (0..PRIMES.len(), 0usize..10, 0usize..10).prop_flat_map(|(k, r, c)| {
        let p = PRIMES[k];
        prop::collection::vec(0..p, r * c)
            .prop_map(move |data| PrimeMatrix::from_flat(Fp::new(p).unwrap(), r, c, data).unwrap())
    })
}

/// A Jordan type with parts at most `n` and total size in `1..=max`.
fn arb_type(n: usize, max: usize) -> impl Strategy<Value = JordanType> {
    prop::collection::vec(1..=n, 1..=max).prop_map(move |parts| {
        let mut total = 0;
        JordanType::new(
            parts
                .into_iter()
                .take_while(|&x| {
                    total += x;
                    total <= max.max(x)
                })
                .collect(),
        )
    })
}

fn conjugated_rep(field: Fp, jordan: &JordanType, seed: u64) -> GroupRep {
    let rep = GroupRep::cyclic_from_jordan(field, jordan).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rep.conjugate(&random_invertible(field, rep.dim(), &mut rng)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity_and_transpose(m in arb_matrix()) {
        let p = u64::from(m.modulus());
        let r = m.rank();
        prop_assert_eq!(r, m.transpose().rank());
        prop_assert_eq!(r + m.kernel().dim(), m.cols());
        prop_assert_eq!(r, common::rank(&to_mat(&m), p));
        prop_assert_eq!(r, m.image().dim());
    }

    #[test]
    fn sparse_shift_rank_matches_dense(k in 0..PRIMES.len(), perm in Just((0..40usize).collect::<Vec<_>>()).prop_shuffle(), power in 1usize..6) {
        let field = Fp::new(PRIMES[k]).unwrap();
        let op = IdMinusPerm::new(field, perm).unwrap();
        let dense = op.to_dense();
        prop_assert_eq!(op.rank(), dense.rank());
        prop_assert_eq!(op.rank_of_power(power), dense.pow(power).unwrap().rank());
        prop_assert_eq!(op.power(power).to_dense(), dense.pow(power).unwrap());
    }

    #[test]
    fn functors_are_additive(n in 2usize..7, a in arb_type(6, 6), b in arb_type(6, 6), seed in any::<u64>()) {
        let field = Fp::new(3).unwrap();
        let clip = |t: &JordanType| JordanType::new(t.parts().iter().map(|&x| x.min(n)).collect());
        let (a, b) = (clip(&a), clip(&b));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = NilModule::from_jordan_type(field, &a, n).unwrap();
        let y = NilModule::from_jordan_type(field, &b, n).unwrap();
        let sum = x.direct_sum(&y).unwrap();
        let sum = sum.conjugate(&random_invertible(field, sum.dim(), &mut rng)).unwrap();
        for i in 1..n {
            prop_assert_eq!(sum.functor_b(i).unwrap().dim(), x.functor_b(i).unwrap().dim() + y.functor_b(i).unwrap().dim());
            prop_assert_eq!(sum.functor_e(i).unwrap().dim(), x.functor_e(i).unwrap().dim() + y.functor_e(i).unwrap().dim());
        }
        prop_assert_eq!(sum.jordan_type(), a.union(&b));
    }

    #[test]
    fn tensor_decomposition_is_symmetric(k in 0..PRIMES.len(), a in arb_type(7, 8), b in arb_type(7, 8), seed in any::<u64>()) {
        let p = PRIMES[k];
        let field = Fp::new(p).unwrap();
        let clip = |t: &JordanType| JordanType::new(t.parts().iter().map(|&x| x.min(p as usize)).collect());
        let x = conjugated_rep(field, &clip(&a), seed);
        let y = conjugated_rep(field, &clip(&b), seed ^ 1);
        let xy = x.tensor(&y).unwrap().decompose_cyclic().unwrap();
        let yx = y.tensor(&x).unwrap().decompose_cyclic().unwrap();
        prop_assert_eq!(&xy, &yx);
        prop_assert_eq!(xy.dim(), x.dim() * y.dim());
        let left = semisimplify_rep(&x.tensor(&y).unwrap()).unwrap();
        let right = semisimplify_rep(&x).unwrap().tensor(&semisimplify_rep(&y).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn fpdim_is_multiplicative(k in 0..5usize, u in prop::collection::vec(0u64..4, 10), v in prop::collection::vec(0u64..4, 10)) {
        let p = [2u32, 3, 5, 7, 11][k];
        let size = p as usize - 1;
        let a = FusionElement::from_mult(p, u[..size].to_vec()).unwrap();
        let b = FusionElement::from_mult(p, v[..size].to_vec()).unwrap();
        let prod = a.tensor(&b).unwrap();
        prop_assert!((prod.fpdim() - a.fpdim() * b.fpdim()).abs() <= 1e-9 * (1.0 + prod.fpdim()));
        prop_assert_eq!(prod, b.tensor(&a).unwrap());
    }

    #[test]
    fn frobenius_components_of_group_reps(k in 0..3usize, t in arb_type(5, 5), seed in any::<u64>()) {
        let p = [2u32, 3, 5][k];
        let field = Fp::new(p).unwrap();
        let n = p as usize;
        let limit = [10, 6, 3][k];
        let t = JordanType::new(t.parts().iter().map(|&x| x.min(n)).take(limit).collect());
        prop_assume!(t.dim() <= limit);
        let x = conjugated_rep(field, &t, seed);
        let power = CyclicPower::new(&x).unwrap();
        prop_assert!(power.is_nilpotent());
        prop_assert!(power.shift_commutes());
        prop_assert_eq!(power.jordan_type(), power.jordan_type_by_rank());
        let image = frobenius_components(&x).unwrap();
        let f = image.f_dims();
        prop_assert_eq!(f[0], x.dim());
        prop_assert!(f[1..].iter().all(|&d| d == 0));
        for (i, g) in image.g_dims().into_iter().enumerate() {
            let v = multiplicity_vector(n, i + 1).unwrap();
            prop_assert_eq!(g, v.iter().zip(&f).map(|(a, b)| a * b).sum::<usize>());
        }
    }

    #[test]
    fn symmetric_powers_have_polynomial_dims(k in 0..3usize, t in arb_type(3, 3), seed in any::<u64>()) {
        let p = [2u32, 3, 5][k];
        let field = Fp::new(p).unwrap();
        let t = JordanType::new(t.parts().iter().map(|&x| x.min(p as usize)).collect());
        let x = conjugated_rep(field, &t, seed);
        let d = x.dim();
        let terms = if d <= 2 { 8 } else { 4 };
        let series = hilbert_coeffs(&x, terms).unwrap();
        for (m, &c) in series.coeffs.iter().enumerate() {
            prop_assert_eq!(c as usize, common::binomial(m + d - 1, d - 1));
        }
        prop_assert!(series.quotient_violations().is_empty());
    }

    #[test]
    fn module_spec_is_order_independent(terms in prop::collection::vec((1usize..4, 1usize..8), 1..5), rot in 0usize..5) {
        let render = |ts: &[(usize, usize)]| ts.iter().map(|(c, k)| format!("{c}*J{k}")).collect::<Vec<_>>().join(" + ");
        let mut rotated = terms.clone();
        let len = rotated.len();
        rotated.rotate_left(rot % len);
        let a: ModuleSpec = render(&terms).parse().unwrap();
        let b: ModuleSpec = render(&rotated).parse().unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.jordan.dim(), terms.iter().map(|(c, k)| c * k).sum::<usize>());
    }

    #[test]
    fn jordan_type_from_ranks_round_trips(t in arb_type(8, 12)) {
        let ranks: Vec<usize> = (0..=9).map(|j| t.rank_of_power(j)).collect();
        prop_assert_eq!(JordanType::from_ranks(&ranks).unwrap(), t);
    }
}

#[test]
fn functor_dims_for_all_small_types() {
    let p = 5u64;
    let field = Fp::new(p as u32).unwrap();
    for n in 1..=8usize {
        for size in 1..=8 {
            for t in partitions(size, n) {
                let module = NilModule::from_jordan_type(field, &t, n).unwrap();
                let ranks = common::rank_sequence(&to_mat(module.d()), n + 1, p);
                for i in 1..n {
                    let b = module.functor_b(i).unwrap().dim();
                    assert_eq!(b, t.multiplicity(i), "{t} n={n} i={i}");
                    assert_eq!(b, common::block_count(&ranks, i));
                    let e = module.functor_e(i).unwrap().dim();
                    let want: usize = (1..n).map(|j| i.min(j).min(n - i).min(n - j) * t.multiplicity(j)).sum();
                    assert_eq!(e, want, "{t} n={n} i={i}");
                }
            }
        }
    }
}

#[test]
fn tensoring_with_the_free_block_is_free() {
    for p in [2u32, 3, 5, 7] {
        let field = Fp::new(p).unwrap();
        let free = GroupRep::cyclic_block(field, p as usize).unwrap();
        for a in 1..=p as usize {
            let prod = GroupRep::cyclic_block(field, a).unwrap().tensor(&free).unwrap();
            assert_eq!(prod.decompose_cyclic().unwrap(), JordanType::new(vec![p as usize; a]));
        }
    }
}

#[test]
fn fusion_matrices_form_a_representation_of_the_ring() {
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23] {
        let size = p as usize - 1;
        let mats: Vec<Vec<Vec<u64>>> = (1..=size).map(|r| fusion_matrix(p, r).unwrap()).collect();
        let mul = |a: &Vec<Vec<u64>>, b: &Vec<Vec<u64>>| -> Vec<Vec<u64>> {
            (0..size)
                .map(|i| (0..size).map(|j| (0..size).map(|k| a[i][k] * b[k][j]).sum()).collect())
                .collect()
        };
        for r in 1..=size {
            for s in 1..=size {
                let prod = fusion_simple(p, r, s).unwrap();
                let mut expected = vec![vec![0u64; size]; size];
                for t in 1..=size {
                    for i in 0..size {
                        for j in 0..size {
                            expected[i][j] += prod.get(t) * mats[t - 1][i][j];
                        }
                    }
                }
                assert_eq!(mul(&mats[r - 1], &mats[s - 1]), expected, "p={p} r={r} s={s}");
            }
        }
    }
}
