//! Property tests for the exact kernel: round trips, structural invariants,
//! and cross-checks between independent computation routes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

use cyclocert_core::{
    cyclotomic_poly, factor_mod_p, galois_feasible, is_cyclotomic_product, sturm_count,
    unity_root_indices, FactorPattern, FpPoly, IntPoly, RootRange,
};

fn int_poly(max_deg: usize, max_coeff: i64) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-max_coeff..=max_coeff, 1..=max_deg + 1)
        .prop_map(|v| IntPoly::from_i64s(&v))
}

fn nonzero_poly(max_deg: usize, max_coeff: i64) -> impl Strategy<Value = IntPoly> {
    int_poly(max_deg, max_coeff).prop_filter("nonzero", |f| !f.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(192))]

    #[test]
    fn mul_then_exact_div_round_trips(
        f in int_poly(30, 1_000_000),
        g in nonzero_poly(30, 1_000_000),
    ) {
        let h = f.mul(&g);
        prop_assert_eq!(h.exact_div(&g).unwrap(), f);
    }

    #[test]
    fn mul_degrees_add(f in nonzero_poly(12, 50), g in nonzero_poly(12, 50)) {
        prop_assert_eq!(f.mul(&g).deg(), f.deg() + g.deg());
    }

    #[test]
    fn symmetrize_output_is_self_reciprocal(f in nonzero_poly(14, 1000)) {
        let s = f.symmetrize();
        prop_assert!(s.is_self_reciprocal());
        prop_assert_eq!(s.deg(), 2 * f.deg());
    }

    #[test]
    fn shift_composes_additively(f in int_poly(10, 1000), a in -50i64..=50, b in -50i64..=50) {
        let lhs = f.shift(&BigInt::from(a)).shift(&BigInt::from(b));
        let rhs = f.shift(&BigInt::from(a + b));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn graeffe_squares_integer_roots(roots in prop::collection::vec(-9i64..=9, 1..=5)) {
        let mut f = IntPoly::one();
        for &r in &roots {
            f = f.mul(&IntPoly::from_i64s(&[-r, 1]));
        }
        let g = f.graeffe();
        for &r in &roots {
            let v = g.eval_int(&BigInt::from(r * r));
            prop_assert!(v.is_zero());
        }
    }

    #[test]
    fn discriminant_zero_iff_repeated_factor(f in nonzero_poly(8, 30)) {
        prop_assume!(f.deg() >= 1);
        let disc = f.discriminant();
        let gcd = f.gcd(&f.derivative());
        prop_assert_eq!(disc.is_zero(), gcd.deg() >= 1);
    }

    #[test]
    fn sturm_total_matches_product_of_linears(roots in prop::collection::vec(-20i64..=20, 1..=6)) {
        let mut distinct = roots.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let mut f = IntPoly::one();
        for &r in &distinct {
            f = f.mul(&IntPoly::from_i64s(&[-r, 1]));
        }
        prop_assert_eq!(sturm_count(&f, &RootRange::All).unwrap(), distinct.len());
    }

    #[test]
    fn factor_multiset_reconstructs(
        coeffs in prop::collection::vec(-100i64..=100, 2..=13),
        p_idx in 0usize..8,
        seed in any::<u64>(),
    ) {
        let primes = [2u64, 3, 5, 7, 11, 13, 97, 769];
        let p = primes[p_idx];
        let f = IntPoly::from_i64s(&coeffs);
        match factor_mod_p(&f, p, seed) {
            Ok(ms) => {
                prop_assert_eq!(ms.product(), FpPoly::reduce(&f, p).unwrap());
                let reduced_deg = FpPoly::reduce(&f, p).unwrap().degree();
                prop_assert_eq!(Some(ms.total_degree()), reduced_deg.or(Some(0)));
            }
            Err(_) => {
                // only the zero reduction may fail
                prop_assert!(FpPoly::reduce(&f, p).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn factorization_canonical_across_seeds(
        coeffs in prop::collection::vec(-50i64..=50, 2..=11),
        s1 in any::<u64>(),
        s2 in any::<u64>(),
    ) {
        let f = IntPoly::from_i64s(&coeffs);
        let a = factor_mod_p(&f, 31, s1);
        let b = factor_mod_p(&f, 31, s2);
        prop_assert_eq!(a.is_ok(), b.is_ok());
        if let (Ok(a), Ok(b)) = (a, b) {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn frobenius_fixes_the_base_field(
        coeffs in prop::collection::vec(0i64..=96, 3..=9),
        p_idx in 0usize..4,
    ) {
        // x^p mod f evaluated coefficientwise: Frobenius fixes F_p, so
        // (x^p)^deg ... simpler check: a^p = a for every residue a.
        let primes = [3u64, 5, 7, 97];
        let p = primes[p_idx];
        let f = FpPoly::reduce(&IntPoly::from_i64s(&coeffs), p).unwrap();
        prop_assume!(f.degree().is_some_and(|d| d >= 2));
        let x = FpPoly::x(p);
        let frob = x.pow_mod_u64_exp(p, &f);
        // Freshman's dream: (x + c)^p = x^p + c mod (f, p)
        for c in [1u64, 2, p - 1] {
            let shifted = x.add(&FpPoly::constant(p, c));
            let lhs = shifted.pow_mod_u64_exp(p, &f);
            let rhs = frob.add(&FpPoly::constant(p, c));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn all_multiplicity_one_patterns_need_equal_blocks(
        degs in prop::collection::vec(1usize..=6, 1..=5),
    ) {
        let pattern = FactorPattern::new(degs.iter().map(|&d| (d, 1)).collect());
        let all_equal = degs.iter().all(|&d| d == degs[0]);
        prop_assert_eq!(galois_feasible(&pattern), all_equal);
    }

    #[test]
    fn resultant_matches_sylvester_determinant_mod_p(
        fc in prop::collection::vec(-100i64..=100, 2..=7),
        gc in prop::collection::vec(-100i64..=100, 2..=7),
    ) {
        let f = IntPoly::from_i64s(&fc);
        let g = IntPoly::from_i64s(&gc);
        prop_assume!(!f.is_zero() && !g.is_zero());
        prop_assume!(f.deg() >= 1 && g.deg() >= 1);
        // coefficients are far below p, so degrees survive reduction and
        // the resultant commutes with it
        let p = 1_000_003u64;
        let expected = f.resultant(&g).mod_floor(&BigInt::from(p)).to_u64().unwrap();
        prop_assert_eq!(sylvester_det_mod_p(&f, &g, p), expected);
    }
}

/// Independent route for the resultant: determinant of the Sylvester matrix
/// over F_p by Gaussian elimination.
fn sylvester_det_mod_p(f: &IntPoly, g: &IntPoly, p: u64) -> u64 {
    let (m, n) = (f.deg(), g.deg());
    let size = m + n;
    let red = |c: &BigInt| c.mod_floor(&BigInt::from(p)).to_u64().unwrap();
    let mut mat = vec![vec![0u64; size]; size];
    for (row, r) in mat.iter_mut().enumerate().take(n) {
        for i in 0..=m {
            r[row + i] = red(&f.coeff(m - i));
        }
    }
    for row in 0..m {
        for i in 0..=n {
            mat[n + row][row + i] = red(&g.coeff(n - i));
        }
    }
    let mulp = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let powp = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulp(acc, b);
            }
            b = mulp(b, b);
            e >>= 1;
        }
        acc
    };
    let mut det = 1u64;
    for col in 0..size {
        let Some(pivot) = (col..size).find(|&r| mat[r][col] != 0) else {
            return 0;
        };
        if pivot != col {
            mat.swap(pivot, col);
            det = p - det;
        }
        let inv = powp(mat[col][col], p - 2);
        det = mulp(det, mat[col][col]);
        for r in col + 1..size {
            if mat[r][col] == 0 {
                continue;
            }
            let factor = mulp(mat[r][col], inv);
            let pivot_row = mat[col].clone();
            for (c, entry) in mat[r].iter_mut().enumerate().skip(col) {
                let sub = mulp(factor, pivot_row[c]);
                *entry = (*entry + p - sub) % p;
            }
        }
    }
    det % p
}

#[test]
fn graeffe_closure_on_cyclotomic_products_up_to_50() {
    for n in 1..=50u64 {
        let mut f = cyclotomic_poly(n);
        assert!(is_cyclotomic_product(&f), "phi_{n}");
        for step in 0..2 {
            f = f.graeffe();
            // root squaring of a monic polynomial stays monic
            assert!(f.is_monic());
            assert!(
                is_cyclotomic_product(&f),
                "graeffe^{} of phi_{n} left the class",
                step + 1
            );
        }
    }
}

#[test]
fn unity_root_indices_reconstructs_structured_products() {
    // (phi_1^2 phi_5 phi_12) * (x^2 - x - 3)
    let f = cyclotomic_poly(1)
        .pow(2)
        .mul(&cyclotomic_poly(5))
        .mul(&cyclotomic_poly(12))
        .mul(&IntPoly::from_i64s(&[-3, -1, 1]));
    let part = unity_root_indices(&f);
    assert_eq!(part.entries, vec![(1, 2), (5, 1), (12, 1)]);
    assert_eq!(part.cofactor, IntPoly::from_i64s(&[-3, -1, 1]));
    assert_eq!(part.reconstruct(), f);
}

#[test]
fn galois_feasibility_matches_closed_form_exhaustively() {
    // Independent oracle: feasible iff lcm(degrees) divides gcd(d*m).
    fn closed_form(pattern: &FactorPattern) -> bool {
        let lcm = pattern
            .blocks
            .iter()
            .fold(1usize, |acc, &(d, _)| num_integer::lcm(acc, d));
        let gcd = pattern
            .blocks
            .iter()
            .fold(0usize, |acc, &(d, m)| num_integer::gcd(acc, d * m));
        gcd % lcm == 0
    }

    // every pattern with total degree at most 12
    fn enumerate(
        n: usize,
        max_d: usize,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for d in 1..=max_d.min(n) {
            for m in 1..=(n / d) {
                cur.push((d, m));
                enumerate(n - d * m, d, cur, out);
                cur.pop();
            }
        }
    }

    for n in 1..=12 {
        let mut all = Vec::new();
        enumerate(n, n, &mut Vec::new(), &mut all);
        for blocks in all {
            let pattern = FactorPattern::new(blocks);
            assert_eq!(
                galois_feasible(&pattern),
                closed_form(&pattern),
                "pattern {pattern} (n = {n})"
            );
        }
    }
}
