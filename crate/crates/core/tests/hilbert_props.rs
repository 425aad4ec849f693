use proptest::prelude::*;
use qsv_core::hilbert::{expectation, member, ComplexMatrix, Projector};
use qsv_core::sampling::{
    nontrivial_pattern, projector_in_basis, random_projector, random_state, random_state_in,
    random_unitary, seeded_rng,
};
use qsv_core::Settings;
use rand::Rng;

fn settings() -> Settings {
    Settings::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn range_and_kernel_are_complementary(seed in any::<u64>(), dim in 2usize..=4) {
        let s = settings();
        let mut rng = seeded_rng(seed, 0);
        let p = random_projector(dim, &mut rng, &s).unwrap();
        let (ran, ker) = (p.range_basis(), p.kernel_basis());
        prop_assert_eq!(ran.dim() + ker.dim(), dim);
        prop_assert_eq!(ran.dim(), p.rank());
        for a in ran.basis() {
            for b in ker.basis() {
                prop_assert!(a.dotc(b).norm() <= s.eps_alg);
            }
        }
        prop_assert!(ran.orthonormality_residual() <= s.eps_alg);
        // the range basis reproduces the projector
        prop_assert!(ran.projector_matrix().max_abs_diff(p.matrix()) <= s.eps_alg);
    }

    #[test]
    fn membership_bounds_expectation(seed in any::<u64>(), dim in 2usize..=4) {
        let s = settings();
        let mut rng = seeded_rng(seed, 1);
        let p = random_projector(dim, &mut rng, &s).unwrap();
        let inside = random_state_in(p.range_basis(), &mut rng, &s).unwrap();
        let outside = random_state_in(p.kernel_basis(), &mut rng, &s).unwrap();
        prop_assert!(member(&inside, p.range_basis(), &s).unwrap());
        prop_assert!(expectation(&inside, &p).unwrap() >= 1.0 - s.eps_member);
        prop_assert!(member(&outside, p.kernel_basis(), &s).unwrap());
        prop_assert!(expectation(&outside, &p).unwrap() <= s.eps_member);

        let v = random_state(dim, &mut rng, &s).unwrap();
        if member(&v, p.range_basis(), &s).unwrap() {
            prop_assert!(expectation(&v, &p).unwrap() >= 1.0 - s.eps_member);
        }
    }

    #[test]
    fn resolutions_of_identity_sum_to_one(seed in any::<u64>(), dim in 2usize..=4) {
        let s = settings();
        let mut rng = seeded_rng(seed, 2);
        let u = random_unitary(dim, &mut rng);
        // random partition of the basis columns into consecutive groups
        let mut parts = Vec::new();
        let mut start = 0;
        while start < dim {
            let len = rng.random_range(1..=dim - start);
            let pattern: Vec<bool> = (0..dim).map(|k| k >= start && k < start + len).collect();
            parts.push(projector_in_basis(&u, &pattern, &s).unwrap());
            start += len;
        }
        let total = parts.iter().fold(ComplexMatrix::zeros(dim), |acc, p| &acc + p.matrix());
        prop_assert!(total.max_abs_diff(&ComplexMatrix::identity(dim)) <= dim as f64 * s.eps_alg);

        let v = random_state(dim, &mut rng, &s).unwrap();
        let sum: f64 = parts.iter().map(|p| expectation(&v, p).unwrap()).sum();
        prop_assert!((sum - 1.0).abs() <= dim as f64 * s.eps_alg);
    }

    #[test]
    fn membership_is_phase_invariant(seed in any::<u64>(), dim in 2usize..=4) {
        let s = settings();
        let mut rng = seeded_rng(seed, 3);
        let u = random_unitary(dim, &mut rng);
        let p = projector_in_basis(&u, &nontrivial_pattern(dim, &mut rng), &s).unwrap();
        let states = [
            random_state_in(p.range_basis(), &mut rng, &s).unwrap(),
            random_state(dim, &mut rng, &s).unwrap(),
        ];
        for v in &states {
            let want = (member(v, p.range_basis(), &s).unwrap(), member(v, p.kernel_basis(), &s).unwrap());
            for _ in 0..100 {
                let w = v.with_phase(rng.random_range(0.0..std::f64::consts::TAU));
                let got = (member(&w, p.range_basis(), &s).unwrap(), member(&w, p.kernel_basis(), &s).unwrap());
                prop_assert_eq!(got, want);
            }
        }
    }
}

#[test]
fn trivial_projectors() {
    let s = settings();
    let mut rng = seeded_rng(0, 0);
    for dim in 1..=4 {
        let v = random_state(dim, &mut rng, &s).unwrap();
        assert!(member(&v, Projector::identity(dim).range_basis(), &s).unwrap());
        assert!(!member(&v, Projector::zero(dim).range_basis(), &s).unwrap());
        assert_eq!(Projector::validate(ComplexMatrix::identity(dim), &s).unwrap().rank(), dim);
    }
}
