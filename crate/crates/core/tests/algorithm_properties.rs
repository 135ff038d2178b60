use nkpr_core::algorithms::{
    coprime_fraction, dj_final_state, period_distribution, period_state, qft_matrix, recover_period, BooleanFunction,
    PeriodInstance,
};
use nkpr_core::{Complex64, ComplexMatrix};
use proptest::prelude::*;

/// The closed-form output state with its missing `1/sqrt(2)` restored.
fn closed_form(f: BooleanFunction) -> Vec<Complex64> {
    let (f0, f1) = f.table();
    let global = if f0 == 0 { 1.0 } else { -1.0 };
    let s = if f0 ^ f1 == 0 { 1.0 } else { -1.0 };
    let first = [(1.0 + s) / 2.0, (1.0 - s) / 2.0];
    let second = [1.0 / 2f64.sqrt(), -1.0 / 2f64.sqrt()];
    let mut out = Vec::new();
    for a in first {
        for b in second {
            out.push(Complex64::new(global * a * b, 0.0));
        }
    }
    out
}

#[test]
fn gate_products_match_closed_form() {
    for f in BooleanFunction::ALL {
        let expected = ComplexMatrix::ket_bra(&closed_form(f)).unwrap();
        assert!(dj_final_state(f).matrix().distance(&expected).unwrap() < 1e-12, "{f}");
    }
}

#[test]
fn qft_is_unitary_up_to_64() {
    for n in 1..=64 {
        let f = qft_matrix(n).unwrap();
        let err = f.adjoint().mul(&f).unwrap().distance(&ComplexMatrix::identity(n)).unwrap();
        assert!(err < 1e-10, "N = {n}: {err}");
    }
}

/// Lowest-terms denominator by trial division.
fn reduced_denominator(c: usize, n: usize) -> usize {
    let (mut num, mut den) = (c, n);
    if num == 0 {
        return 1;
    }
    let mut p = 2;
    while p <= num {
        while num % p == 0 && den % p == 0 {
            num /= p;
            den /= p;
        }
        p += 1;
    }
    den
}

/// Euler's phi by checking every shared divisor.
fn phi(r: usize) -> usize {
    (1..=r).filter(|&j| !(2..=r).any(|d| j.is_multiple_of(d) && r.is_multiple_of(d))).count()
}

proptest! {
    #[test]
    fn support_is_multiples_of_spacing(k in 1usize..9, r in 1usize..9, x0_seed in any::<usize>()) {
        let n = k * r;
        let inst = PeriodInstance::new(n, r, x0_seed % r).unwrap();
        let psi = period_state(&inst);
        for (x, a) in psi.iter().enumerate() {
            let expected = if x % r == inst.x0() { 1.0 / (k as f64).sqrt() } else { 0.0 };
            prop_assert!((a - Complex64::new(expected, 0.0)).norm() < 1e-12);
        }
        for (c, p) in period_distribution(&inst).iter().enumerate() {
            let expected = if c % k == 0 { 1.0 / r as f64 } else { 0.0 };
            prop_assert!((p - expected).abs() < 1e-12, "c = {}", c);
        }
    }

    #[test]
    fn recover_period_matches_trial_division(n in 1usize..200, c_seed in any::<usize>()) {
        let c = c_seed % n;
        prop_assert_eq!(recover_period(c, n), reduced_denominator(c, n));
    }

    #[test]
    fn coprime_fraction_matches_phi(r in 1usize..200) {
        prop_assert!((coprime_fraction(r) - phi(r) as f64 / r as f64).abs() < 1e-15);
    }
}
