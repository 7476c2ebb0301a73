//! Acceptance suite: one test per criterion, each printing a pass line.
//! All equalities are exact; run with `cargo test --test acceptance`.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use witt_core::conditions::{
    condition_matrix_with_assertions, CheckContext, ConditionId, ConditionStatus, Method,
};
use witt_core::image::{solve_frobenius, verify_prmodp2, SolverOracles};
use witt_core::kernel::{ideal_chain, kernel_element, ChainIndex};
use witt_core::ring::{parse_ring_spec, Ring, RingDescriptor, RingElement};
use witt_core::universal::{
    correction_report, family, frobenius_polys, FamilyKind, Monomial, WittVariable,
};
use witt_core::wittvec::WittVector;

fn pass(criterion: u32, what: &str) {
    println!("criterion {criterion}: PASS - {what}");
}

const RANGES: [(u64, u32); 3] = [(2, 5), (3, 3), (5, 2)];

#[test]
fn criterion_01_universal_polynomial_integrality() {
    let t0 = Instant::now();
    for (p, cap) in RANGES {
        for kind in [
            FamilyKind::Sum,
            FamilyKind::Product,
            FamilyKind::Neg,
            FamilyKind::Frobenius,
            FamilyKind::Correction,
        ] {
            let members = family(p, kind, cap, None)
                .unwrap_or_else(|e| panic!("family {kind:?} p={p} level {cap}: {e}"));
            assert_eq!(members.len(), cap as usize + 1);
        }
    }
    let elapsed = t0.elapsed();
    assert!(
        elapsed.as_secs() < 300,
        "family construction took {elapsed:?}, over the 5 minute bound"
    );
    pass(
        1,
        &format!("all ghost-map inversions exact for (2,<=5), (3,<=3), (5,<=2) in {elapsed:?}"),
    );
}

#[test]
fn criterion_02_correction_polynomial_checks() {
    for (p, cap) in RANGES {
        let report = correction_report(p, cap).unwrap();
        assert!(
            report.all_passed(),
            "p={p}: failing checks {:?}",
            report.failures()
        );
    }
    // The slot-one p-th power coefficient congruence, pinned per prime:
    // -p^(p-2) mod p is -1 for p=2 and 0 for p=3, 5.
    for (p, expected_mod_p) in [(2u64, 1i64), (3, 0), (5, 0)] {
        let f_p = witt_core::universal::correction_poly(p, 1).unwrap();
        let mono = Monomial::from_factors(vec![(WittVariable::x(1), p as u32)]);
        let c = f_p.coefficient_of(&mono);
        let got = ((c % BigInt::from(p)) + BigInt::from(p)) % BigInt::from(p);
        assert_eq!(got, BigInt::from(expected_mod_p), "p={p}");
    }
    // The two-adic ideal-membership reduction is the zero polynomial for
    // levels 2 and 3.
    let report = correction_report(2, 3).unwrap();
    let named: Vec<_> = report
        .checks
        .iter()
        .filter(|c| c.name == "two-adic-ideal-membership" && (c.level == 2 || c.level == 3))
        .collect();
    assert_eq!(named.len(), 2);
    assert!(named.iter().all(|c| c.passed));
    pass(2, "correction coefficient checks hold on the full ranges");
}

#[test]
fn criterion_03_components_of_p() {
    for (p, len, expect) in [
        (2u64, 4usize, vec![2i64, 3, 0, 0]),
        (3, 3, vec![3, 1, 0]),
        (5, 2, vec![5, 1]),
    ] {
        let ring = Ring::modular((p * p).into()).unwrap();
        let one = WittVector::one(p, &ring, len).unwrap();
        let p_one = one.int_scalar_mul(&BigInt::from(p)).unwrap();
        let expected = WittVector::new(
            p,
            &ring,
            expect.iter().map(|&v| ring.from_int(BigInt::from(v))).collect(),
        )
        .unwrap();
        assert_eq!(p_one, expected, "p={p}");
        let teich_p = WittVector::teichmuller(p, &ring.from_int(BigInt::from(p)), len).unwrap();
        let sign = ring.from_int(BigInt::from(-1i64).pow((p - 1) as u32));
        let combined = teich_p
            .add(&WittVector::teichmuller(p, &sign, len - 1).unwrap().verschiebung())
            .unwrap();
        assert_eq!(p_one, combined, "p={p}: [p] + V([(-1)^(p-1)])");
    }
    pass(3, "p*1 = [p] + V([(-1)^(p-1)]) in W(Z/p^2) for p in {2,3,5}");
}

fn sample_element(rng: &mut ChaCha8Rng, ring: &Ring) -> RingElement {
    match ring.descriptor() {
        RingDescriptor::Integers => ring.from_int(BigInt::from(rng.gen_range(-20i64..=20))),
        RingDescriptor::ModularIntegers { modulus } => {
            let m = u64::try_from(modulus).unwrap();
            ring.from_int(BigInt::from(rng.gen_range(0..m)))
        }
        RingDescriptor::PrimeField { prime } => {
            let m = u64::try_from(prime).unwrap();
            ring.from_int(BigInt::from(rng.gen_range(0..m)))
        }
        RingDescriptor::QuotientRing { modulus, .. } => {
            let deg = modulus.len() - 1;
            let coeffs: Vec<BigInt> = (0..deg)
                .map(|_| BigInt::from(rng.gen_range(-4i64..=4)))
                .collect();
            ring.poly_element(coeffs).unwrap()
        }
        RingDescriptor::CyclotomicLevel { p, level } => {
            let deg = (p.pow(level - 1) * (p - 1)) as usize;
            let coeffs: Vec<BigInt> = (0..deg)
                .map(|_| BigInt::from(rng.gen_range(-3i64..=3)))
                .collect();
            ring.poly_element(coeffs).unwrap()
        }
        RingDescriptor::CyclotomicTower { .. } => {
            let level = rng.gen_range(1..=2);
            let deg = 2 + rng.gen_range(0..3usize);
            let coeffs: Vec<BigInt> = (0..deg)
                .map(|_| BigInt::from(rng.gen_range(-2i64..=2)))
                .collect();
            ring.tower_element(level, coeffs).unwrap()
        }
        RingDescriptor::PolynomialRing { .. } => {
            let coeffs: Vec<BigInt> = (0..3).map(|_| BigInt::from(rng.gen_range(0..3i64))).collect();
            ring.poly_element(coeffs).unwrap()
        }
    }
}

fn sample_vector(rng: &mut ChaCha8Rng, ring: &Ring, p: u64, len: usize) -> WittVector {
    WittVector::new(p, ring, (0..len).map(|_| sample_element(rng, ring)).collect()).unwrap()
}

#[test]
fn criterion_04_structural_identity_suite() {
    let fixtures: [(&str, u64); 5] = [
        ("Z", 2),
        ("Z/4", 2),
        ("Z/9", 3),
        ("GF(3)[T]/(T^3)", 3),
        ("Zeta(3,2)", 3),
    ];
    const CASES: usize = 1000;
    for (spec, p) in fixtures {
        let ring = parse_ring_spec(spec).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5717_c0de ^ p);
        for case in 0..CASES {
            let x = sample_vector(&mut rng, &ring, p, 3);
            let y = sample_vector(&mut rng, &ring, p, 3);
            let short = sample_vector(&mut rng, &ring, p, 2);
            let r = sample_element(&mut rng, &ring);

            // Ghost ring homomorphism.
            let sum = x.add(&y).unwrap();
            let prod = x.mul(&y).unwrap();
            let (gx, gy, gs, gp) = (x.ghost(), y.ghost(), sum.ghost(), prod.ghost());
            for i in 0..3 {
                assert_eq!(
                    gs.values[i],
                    ring.add(&gx.values[i], &gy.values[i]).unwrap(),
                    "{spec} case {case}: ghost additivity slot {i}"
                );
                assert_eq!(
                    gp.values[i],
                    ring.mul(&gx.values[i], &gy.values[i]).unwrap(),
                    "{spec} case {case}: ghost multiplicativity slot {i}"
                );
            }

            // F(V(x)) = p x.
            let fv = short.verschiebung().frobenius().unwrap();
            let px = short.int_scalar_mul(&BigInt::from(p)).unwrap();
            assert_eq!(fv, px, "{spec} case {case}: FV = p");

            // V(x F(y)) = V(x) y.
            let fy = y.frobenius().unwrap();
            let lhs = short.mul(&fy).unwrap().verschiebung();
            let rhs = short.verschiebung().mul(&y).unwrap();
            assert_eq!(lhs, rhs, "{spec} case {case}: projection formula");

            // F([r]) = [r^p].
            let fr = WittVector::teichmuller(p, &r, 3).unwrap().frobenius().unwrap();
            let rp = ring.pow(&r, p).unwrap();
            assert_eq!(
                fr,
                WittVector::teichmuller(p, &rp, 2).unwrap(),
                "{spec} case {case}: Teichmuller Frobenius"
            );

            // Sum of V^i([x_i]) reconstructs x.
            let mut acc = WittVector::zero(p, &ring, 3).unwrap();
            for part in x.v_decompose() {
                acc = acc.add(&part).unwrap();
            }
            assert_eq!(acc, x, "{spec} case {case}: V-decomposition");
        }
    }
    pass(4, "structural identities hold on 1000 random cases per fixture ring");
}

#[test]
fn criterion_05_kernel_machinery() {
    // Over Z: kernel elements for r = p at depths up to 3.
    for p in [2u64, 3] {
        let z = Ring::integers();
        let r = z.from_int(BigInt::from(p));
        for n in 1..=3u32 {
            let k = kernel_element(&z, p, &r, n).unwrap();
            let f = k.frobenius().unwrap();
            assert_eq!(f, WittVector::zero(p, &z, n as usize).unwrap());
            let g = k.ghost();
            assert_eq!(g.values[0], r);
            assert!(g.values[1..].iter().all(|v| v.is_zero()), "p={p} n={n}");
        }
    }
    // Corollary equivalence on Z/4 and Z/9: the set of successful first
    // components equals the brute-force ideal, exhaustively.
    for (m, p) in [(4u32, 2u64), (9, 3)] {
        let ring = Ring::modular(m.into()).unwrap();
        let model = ideal_chain(&ring, p, 2).unwrap();
        for i in 1..=2u32 {
            for r in ring.enumerate_all().unwrap() {
                let constructed = kernel_element(&ring, p, &r, i).is_ok();
                let member = model.contains(&r, ChainIndex::At(i)).unwrap();
                assert_eq!(constructed, member, "Z/{m} p={p} i={i} r={r}");
            }
        }
    }
    pass(5, "kernel construction and brute-force ideal sets agree exactly");
}

#[test]
fn criterion_06_teichmuller_sum_maps_to_v_one() {
    for p in [2u64, 3, 5] {
        let ring = Ring::cyclotomic(p, 2).unwrap();
        let mu = ring.generator().unwrap();
        let len = 3usize;
        let mut x = WittVector::zero(p, &ring, len).unwrap();
        let mut mu_i = ring.one();
        for _ in 0..p {
            x = x.add(&WittVector::teichmuller(p, &mu_i, len).unwrap()).unwrap();
            mu_i = ring.mul(&mu_i, &mu).unwrap();
        }
        let fx = x.frobenius().unwrap();
        let v1 = WittVector::one(p, &ring, 1).unwrap().verschiebung();
        assert_eq!(fx, v1, "p={p}");
        // Exact ghost certification: (.., 0, p) on x, (0, p) on V(1).
        let gx = x.ghost();
        assert!(gx.values[1].is_zero(), "p={p}");
        assert_eq!(gx.values[2], ring.from_int(BigInt::from(p)), "p={p}");
        let gv = v1.ghost();
        assert!(gv.values[0].is_zero());
        assert_eq!(gv.values[1], ring.from_int(BigInt::from(p)));
    }
    // Deeper truncation for the odd primes inside the level caps.
    let report = witt_core::fixtures::run_fixture("teichmuller-sum-v-image").unwrap();
    assert!(report.passed, "{:?}", report.details);
    pass(6, "F(sum of [mu^i]) = V(1) with exact ghost certification, p in {2,3,5}");
}

#[test]
fn criterion_07_power_of_mu_difference() {
    let report = witt_core::fixtures::run_fixture("power-of-mu-difference").unwrap();
    assert!(report.passed, "{:?}", report.details);
    pass(7, "u^(p^n - p^(n-1)) = -p mod u^(p^n) for (3,2), (3,3), (5,2)");
}

#[test]
fn criterion_08_no_pth_root_searches() {
    let t0 = Instant::now();
    let report = witt_core::fixtures::run_fixture("no-pth-root-truncated").unwrap();
    let elapsed = t0.elapsed();
    assert!(report.passed, "{:?}", report.details);
    assert!(
        report
            .details
            .iter()
            .any(|d| d.contains("scanned 27 candidates")),
        "{:?}",
        report.details
    );
    assert!(
        report
            .details
            .iter()
            .any(|d| d.contains("scanned 3125 candidates")),
        "{:?}",
        report.details
    );
    assert!(elapsed.as_secs() < 10, "took {elapsed:?}");
    pass(
        8,
        &format!("27- and 3125-candidate searches returned empty in {elapsed:?}"),
    );
}

#[test]
fn criterion_09_preimage_solver_on_the_tower() {
    let ring = Ring::cyclotomic_tower(3).unwrap();
    let p = 3u64;
    let oracles = SolverOracles::for_ring(&ring, p);
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e17_0e44_abcd);
    let mut solved = 0;
    for case in 0..100 {
        let target_len = if case % 2 == 0 { 2 } else { 3 };
        // Build y = F(x) from a random x one slot longer, with components at
        // low tower levels to keep the certified arithmetic quick.
        let x = WittVector::new(
            p,
            &ring,
            (0..=target_len)
                .map(|_| {
                    let level = rng.gen_range(1..=2);
                    let deg = rng.gen_range(1..=2usize);
                    let coeffs: Vec<BigInt> =
                        (0..deg).map(|_| BigInt::from(rng.gen_range(-1i64..=1))).collect();
                    ring.tower_element(level, coeffs).unwrap()
                })
                .collect(),
        )
        .unwrap();
        let y = x.frobenius().unwrap();
        let result = solve_frobenius(&oracles, &y)
            .unwrap_or_else(|e| panic!("case {case} (len {target_len}): {e}"));
        assert_eq!(result.solution.frobenius().unwrap(), y, "case {case}");
        solved += 1;
    }
    assert_eq!(solved, 100);
    // The derived pr-mod-p^2 hook certificate on 100 random elements.
    for case in 0..100 {
        let level = rng.gen_range(1..=2);
        let deg = rng.gen_range(1..=3usize);
        let coeffs: Vec<BigInt> = (0..deg).map(|_| BigInt::from(rng.gen_range(-3i64..=3))).collect();
        let r = ring.tower_element(level, coeffs).unwrap();
        let s = oracles.prmodp2(&r).unwrap_or_else(|e| panic!("hook case {case}: {e}"));
        verify_prmodp2(&ring, p, &s, &r).unwrap();
    }
    pass(9, "100 random tower preimages solved exactly; 100 hook certificates verified");
}

#[test]
fn criterion_10_condition_matrices_and_closure() {
    let report = witt_core::fixtures::run_fixture("condition-matrices").unwrap();
    assert!(report.passed, "{:?}", report.details);
    // Spot-check the cells named by the expectations, straight off the API.
    let z = CheckContext::new(&parse_ring_spec("Z").unwrap(), 3);
    let spher = (
        ConditionId::Spher,
        ConditionStatus::holds(Method::FixtureAsserted, serde_json::json!({})),
    );
    let m = condition_matrix_with_assertions(&z, &[spher]);
    assert!(m.status(ConditionId::PthRootsModP).is_holds());
    assert!(m.status(ConditionId::SomePower).is_fails());
    assert!(m.status(ConditionId::FinLev).is_fails());
    assert!(m.status(ConditionId::Spher).is_holds());
    assert!(m.contradictions.is_empty());
    pass(10, "example-ring matrices match and the closure is contradiction-free");
}

// Criterion 11 (CLI determinism and exit codes) lives in the CLI crate's
// own acceptance test, since it drives the built binary.

#[test]
fn supporting_exact_chain_values() {
    // Pinned chain cutoffs: Z stabilizes at (p); Zeta(3,2) rounds 4/9 up to
    // 1/2 inside Z/6.
    let z = Ring::integers();
    let model = ideal_chain(&z, 3, 4).unwrap();
    for i in 1..=4 {
        assert_eq!(
            model.cutoff(ChainIndex::At(i)).unwrap(),
            &BigRational::one()
        );
    }
    let zeta = Ring::cyclotomic(3, 2).unwrap();
    let model = ideal_chain(&zeta, 3, 2).unwrap();
    assert_eq!(
        model.cutoff(ChainIndex::At(2)).unwrap(),
        &BigRational::new(BigInt::from(1), BigInt::from(2))
    );
}
