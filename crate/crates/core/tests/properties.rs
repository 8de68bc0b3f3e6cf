use proptest::prelude::*;

use floer::complex;
use floer::disks::{self, BlaschkeDisk, BlaschkeFactor};
use floer::gf2::{BitMatrix, Chain};
use floer::induction::{self, Quadruple};
use floer::novikov::NovikovScalar;
use num_complex::Complex64;

fn scalar() -> impl Strategy<Value = NovikovScalar> {
    (1u32..=16, -8i64..8, any::<u64>()).prop_map(|(p, v, w)| {
        let w = (w & ((1 << p) - 1)) | 1;
        NovikovScalar::truncated(v, w, p).unwrap()
    })
}

fn chain(k: u32) -> impl Strategy<Value = Chain> {
    prop::collection::vec(any::<bool>(), 1 << k).prop_map(move |bits| {
        Chain::from_bitvec(k, floer::BitVec::from_bools(&bits)).unwrap()
    })
}

proptest! {
    #[test]
    fn novikov_associativity(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert!(a.mul(&b).mul(&c).agrees_with(&a.mul(&b.mul(&c))));
        prop_assert!(a.add(&b).add(&c).agrees_with(&a.add(&b.add(&c))));
    }

    #[test]
    fn novikov_inverse_is_two_sided(a in scalar()) {
        let inv = a.inv().unwrap();
        prop_assert!(inv.inv().unwrap().agrees_with(&a));
        prop_assert_eq!(inv.valuation(), a.valuation().map(|v| -v));
    }

    #[test]
    fn novikov_display_round_trips(a in scalar()) {
        let back = NovikovScalar::parse(&a.to_string(), a.precision()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn boundary_is_linear(x in chain(5), y in chain(5)) {
        let lhs = complex::boundary(&(&x + &y));
        let rhs = &complex::boundary(&x) + &complex::boundary(&y);
        prop_assert_eq!(lhs, rhs);
        prop_assert!(complex::boundary(&complex::boundary(&x)).is_zero());
    }

    #[test]
    fn projection_commutes(x in chain(7)) {
        let lhs = induction::project(&complex::boundary(&x)).unwrap();
        let rhs = complex::boundary(&induction::project(&x).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn normal_form_round_trips(u in chain(3), v in chain(3), seeds in prop::collection::vec(any::<bool>(), 8)) {
        let kernel: Vec<Chain> = complex::boundary_matrix(3).unwrap().kernel_basis().into_iter()
            .map(|b| Chain::from_bitvec(3, b).unwrap()).collect();
        let pick = |bits: &[bool]| kernel.iter().zip(bits).filter(|(_, &on)| on)
            .fold(Chain::zero(3), |acc, (b, _)| &acc + b);
        let q = Quadruple { u, v, w: pick(&seeds[..4]), t: pick(&seeds[4..]) };
        prop_assert_eq!(induction::decompose(&q.rebuild()).unwrap(), q);
    }

    #[test]
    fn rank_nullity(rows in 1usize..40, cols in 1usize..40, seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let m = BitMatrix::random(rows, cols, &mut rng);
        prop_assert_eq!(m.rank() + m.kernel_basis().len(), cols);
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn winding_counts_degree(
        zeros in prop::collection::vec((0.0f64..0.97, 0.0f64..std::f64::consts::TAU), 0..6),
        theta in 0.0f64..std::f64::consts::TAU,
    ) {
        let f = BlaschkeFactor { theta, zeros: zeros.iter().map(|&(r, a)| Complex64::from_polar(r, a)).collect() };
        let d = BlaschkeDisk::new(vec![f, BlaschkeFactor::constant(0.0)]).unwrap();
        prop_assert_eq!(disks::winding_maslov(&d, 64).unwrap(), 2 * zeros.len() as i64);
    }
}
