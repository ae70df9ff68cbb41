//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are always printed; the process fails if any
//! criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use num_bigint::BigUint;
use num_rational::BigRational;

use wreath_powers::arith::wreath_order;
use wreath_powers::cli::{catalog_up_to, run_args};
use wreath_powers::oracle::{
    power_image_count, power_probability, verify_conjugacy_types, verify_power_types,
};
use wreath_powers::partitions::{count_p, count_p_r, count_p_r_prime, partitions_of, prob_r_sn};
use wreath_powers::series::{
    check_plateau_series, genfun_p_r, genfun_p_r_prime, genfun_partitions, genfun_prob_wreath,
};
use wreath_powers::wreath::{
    class_info, count_classes, count_power_classes_formula, count_power_elements,
    cycle_index_polynomial, enumerate_types, is_rth_power_type, power_classes, power_type,
    preimage_type, prob_r_wreath, verify_plateau,
};
use wreath_powers::{
    catalog_group, conjugacy_classes, nonpower_classes, CatalogKind, ClassStructure, GroupSpec,
    Prime, TypeMatrix,
};

type Check = Result<(), String>;
type Criterion = fn() -> Check;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

macro_rules! ensure_eq {
    ($left:expr, $right:expr) => {{
        let (l, r) = (&$left, &$right);
        if l != r {
            return Err(format!("{} = {:?}, expected {:?}", stringify!($left), l, r));
        }
    }};
}

fn classes(kind: CatalogKind, m: u32) -> ClassStructure {
    conjugacy_classes(&catalog_group(kind, m).unwrap())
}

fn trivial() -> ClassStructure {
    classes(CatalogKind::Trivial, 1)
}

fn p(r: u64) -> Prime {
    Prime::new(r).unwrap()
}

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn matrices(s: usize, n: u32, dense: &[&[u32]]) -> Vec<TypeMatrix> {
    dense
        .iter()
        .map(|d| TypeMatrix::from_dense(s, n, d).unwrap())
        .collect()
}

fn c2_wr_s2_types() -> Check {
    let listed = matrices(
        2,
        2,
        &[
            &[2, 0, 0, 0],
            &[0, 0, 2, 0],
            &[1, 0, 1, 0],
            &[0, 1, 0, 0],
            &[0, 0, 0, 1],
        ],
    );
    let got: BTreeSet<Vec<u32>> = enumerate_types(2, 2)
        .iter()
        .map(TypeMatrix::to_dense)
        .collect();
    let want: BTreeSet<Vec<u32>> = listed.iter().map(TypeMatrix::to_dense).collect();
    ensure_eq!(enumerate_types(2, 2).len(), 5);
    ensure_eq!(got, want);

    let c2 = classes(CatalogKind::Cyclic, 2);
    let z: BTreeMap<Vec<u32>, BigRational> = cycle_index_polynomial(&c2, 2)
        .into_iter()
        .map(|(t, c)| (t.to_dense(), c))
        .collect();
    // t11^2, t21^2, t11 t21, t12, t22
    let coeffs = [q(1, 8), q(1, 8), q(2, 8), q(2, 8), q(2, 8)];
    ensure_eq!(z.len(), 5);
    for (t, c) in listed.iter().zip(coeffs) {
        ensure!(
            z.get(&t.to_dense()) == Some(&c),
            "coefficient of {t} is {:?}, expected {c}",
            z.get(&t.to_dense())
        );
    }
    Ok(())
}

fn s3_wr_s2_sizes() -> Check {
    let s3 = classes(CatalogKind::Symmetric, 3);
    ensure_eq!(s3.sizes(), vec![1u64, 3, 2]);
    let listed = matrices(
        3,
        2,
        &[
            &[2, 0, 0, 0, 0, 0],
            &[0, 0, 2, 0, 0, 0],
            &[0, 0, 0, 0, 2, 0],
            &[1, 0, 1, 0, 0, 0],
            &[0, 0, 1, 0, 1, 0],
            &[1, 0, 0, 0, 1, 0],
            &[0, 1, 0, 0, 0, 0],
            &[0, 0, 0, 1, 0, 0],
            &[0, 0, 0, 0, 0, 1],
        ],
    );
    let sizes: Vec<BigUint> = listed
        .iter()
        .map(|t| class_info(t, &s3).class_size)
        .collect();
    let want: Vec<BigUint> = [1u64, 9, 4, 6, 12, 4, 6, 18, 12]
        .into_iter()
        .map(big)
        .collect();
    ensure_eq!(sizes, want);
    ensure_eq!(sizes.iter().sum::<BigUint>(), big(72));
    let all: BTreeSet<Vec<u32>> = enumerate_types(3, 2)
        .iter()
        .map(TypeMatrix::to_dense)
        .collect();
    let listed: BTreeSet<Vec<u32>> = listed.iter().map(TypeMatrix::to_dense).collect();
    ensure_eq!(all, listed);
    Ok(())
}

fn c3_wr_s3_squares() -> Check {
    let c3 = classes(CatalogKind::Cyclic, 3);
    let two = p(2);
    ensure_eq!(count_classes(3, 3), big(22));
    ensure_eq!(enumerate_types(3, 3).len(), 22);
    ensure_eq!(power_classes(&c3, 3, two).len(), 13);
    ensure_eq!(count_power_classes_formula(&c3, 3, two), big(13));
    ensure_eq!(count_power_elements(&c3, 3, two), big(81));
    ensure_eq!(prob_r_wreath(&c3, 3, two), q(1, 2));
    ensure_eq!(
        power_image_count(c3.group(), 3, 2).map_err(|e| e.to_string())?,
        81u64
    );
    Ok(())
}

fn s3_wr_s3_squares() -> Check {
    let s3 = classes(CatalogKind::Symmetric, 3);
    let two = p(2);
    ensure_eq!(nonpower_classes(&s3, two).d(), 1);
    ensure_eq!(count_classes(3, 3), big(22));
    ensure_eq!(power_classes(&s3, 3, two).len(), 8);
    ensure_eq!(count_power_classes_formula(&s3, 3, two), big(8));
    ensure_eq!(count_power_elements(&s3, 3, two), big(324));
    let brute = power_image_count(s3.group(), 2, 2).map_err(|e| e.to_string())?;
    ensure_eq!(big(brute), count_power_elements(&s3, 2, two));
    Ok(())
}

fn c3_wr_s4_not_product() -> Check {
    let c3 = classes(CatalogKind::Cyclic, 3);
    let omega = count_power_elements(&c3, 4, p(2));
    ensure_eq!(omega, big(810));
    let omega_s4 = prob_r_sn(4, p(2)) * BigRational::from_integer(24.into());
    ensure_eq!(omega_s4, BigRational::from_integer(12.into()));
    let product = big(3u64.pow(4) * 12);
    ensure_eq!(product, big(972));
    ensure!(
        omega != product,
        "|omega_2(C3 wr S4)| equals |G|^n |omega_2(S4)|"
    );
    Ok(())
}

fn table_one() -> Check {
    let two = p(2);
    let rows = [(1u32, [1u64, 0, 1]), (2, [2, 1, 1]), (3, [3, 0, 2])];
    let (gp, gpr, gprp) = (
        genfun_partitions(4),
        genfun_p_r(two, 4),
        genfun_p_r_prime(two, 4),
    );
    for (n, [a, b, c]) in rows {
        let direct: Vec<u64> = {
            let parts: Vec<_> = partitions_of(n).collect();
            let p_r = parts
                .iter()
                .filter(|l| l.mults().all(|(_, m)| m % 2 == 0))
                .count();
            let p_rp = parts
                .iter()
                .filter(|l| l.mults().all(|(part, m)| part % 2 != 0 || m % 2 == 0))
                .count();
            vec![parts.len() as u64, p_r as u64, p_rp as u64]
        };
        ensure_eq!(direct, vec![a, b, c]);
        ensure_eq!(
            (count_p(n), count_p_r(n, two), count_p_r_prime(n, two)),
            (big(a), big(b), big(c))
        );
        let k = n as usize;
        ensure_eq!(
            (
                gp.coeff(k).clone(),
                gpr.coeff(k).clone(),
                gprp.coeff(k).clone()
            ),
            (q(a as i64, 1), q(b as i64, 1), q(c as i64, 1))
        );
    }
    Ok(())
}

fn plateaus() -> Check {
    for r in [2u64, 3, 5] {
        for n in 1..=10u32 {
            if !(n as u64 + 1).is_multiple_of(r) {
                ensure!(
                    prob_r_sn(n, p(r)) == prob_r_sn(n + 1, p(r)),
                    "P_{r}(S_{n}) != P_{r}(S_{})",
                    n + 1
                );
            }
        }
    }
    let cases = [
        (CatalogKind::Cyclic, 3, 2u64),
        (CatalogKind::Cyclic, 2, 3),
        (CatalogKind::Cyclic, 5, 2),
        (CatalogKind::Symmetric, 3, 5),
    ];
    for (kind, m, r) in cases {
        let cs = classes(kind, m);
        let rep = verify_plateau(&cs, p(r), 6).map_err(|e| e.to_string())?;
        ensure!(rep.passed(), "plateau fails for {kind:?} {m}, r = {r}");
        let expected: Vec<u32> = (1..=6).filter(|n| (n + 1) % r as u32 != 0).collect();
        let checked: Vec<u32> = rep.rows.iter().map(|row| row.n).collect();
        ensure_eq!(checked, expected);
        let f = genfun_prob_wreath(&cs, p(r), 7);
        ensure!(
            check_plateau_series(&f, p(r)).is_empty(),
            "series plateau fails for {kind:?} {m}"
        );
    }
    Ok(())
}

fn composite_exponent() -> Check {
    let one = catalog_group(CatalogKind::Trivial, 1).unwrap();
    ensure_eq!(
        power_probability(&one, 4, 6).map_err(|e| e.to_string())?,
        q(1, 6)
    );
    ensure_eq!(
        power_probability(&one, 5, 6).map_err(|e| e.to_string())?,
        q(1, 3)
    );
    ensure!(Prime::new(6).is_err(), "6 accepted as a prime");
    for args in [
        &["wreath", "powers", "1", "-n", "4", "-r", "6"][..],
        &["wreath", "series", "pr", "1", "-r", "6", "--cap", "5"],
        &["wreath", "series", "ccr", "1", "-r", "6", "--cap", "5"],
        &["wreath", "verify", "plateau", "1", "-r", "6"],
        &[
            "wreath", "scan", "q1", "-r", "6", "-n", "5", "--groups", "1",
        ],
    ] {
        let out = run_args(args.iter().copied());
        ensure!(out.code != 0, "{args:?} accepted r = 6");
    }
    let out = run_args(["wreath", "powers", "1", "-n", "5", "-r", "6", "--brute"]);
    ensure!(
        out.code == 0 && out.text.contains("P_6\t1/3"),
        "brute route: {}",
        out.text
    );
    Ok(())
}

fn squares_in_small_groups() -> Check {
    let two = p(2);
    ensure_eq!(prob_r_sn(3, two), q(1, 2));
    ensure_eq!(prob_r_sn(4, two), q(1, 2));
    let c2 = classes(CatalogKind::Cyclic, 2);
    ensure_eq!(prob_r_wreath(&c2, 3, two), q(1, 4));
    ensure_eq!(
        power_probability(c2.group(), 3, 2).map_err(|e| e.to_string())?,
        q(1, 4)
    );
    let one = trivial();
    ensure_eq!(prob_r_wreath(&one, 3, two), q(1, 2));
    ensure_eq!(
        power_probability(one.group(), 4, 2).map_err(|e| e.to_string())?,
        q(1, 2)
    );
    Ok(())
}

fn round_trip_groups() -> Vec<(String, ClassStructure)> {
    let mut specs = catalog_up_to(8);
    specs.push(GroupSpec::Catalog(CatalogKind::Symmetric, 4));
    specs
        .into_iter()
        .map(|s| (s.to_string(), conjugacy_classes(&s.resolve().unwrap())))
        .collect()
}

fn property_suites() -> Check {
    let two = p(2);
    let small = [
        (classes(CatalogKind::Cyclic, 2), 3u32, 48u64),
        (classes(CatalogKind::Cyclic, 3), 3, 162),
        (classes(CatalogKind::Symmetric, 3), 2, 72),
    ];
    for (cs, n, size) in &small {
        let rep = verify_power_types(cs, *n, two).map_err(|e| e.to_string())?;
        ensure!(rep.passed(), "power-type failures: {:?}", rep.failures);
        ensure_eq!(rep.checked, *size);
        let rep = verify_conjugacy_types(cs, *n).map_err(|e| e.to_string())?;
        ensure!(rep.passed(), "conjugacy failures: {:?}", rep.failures);
    }

    for (name, cs) in round_trip_groups() {
        for r in [2u64, 3] {
            let lab = nonpower_classes(&cs, p(r));
            for n in 1..=5 {
                for t in enumerate_types(cs.num_classes(), n) {
                    if !is_rth_power_type(&t, &lab) {
                        continue;
                    }
                    let root = preimage_type(&t, &lab).map_err(|e| e.to_string())?;
                    let back = power_type(&root, p(r), &cs).map_err(|e| e.to_string())?;
                    ensure!(back == t, "{name}, r = {r}: {root} maps to {back}, not {t}");
                }
            }
        }
        for n in 1..=5 {
            let total: BigUint = enumerate_types(cs.num_classes(), n)
                .iter()
                .map(|t| class_info(t, &cs).class_size)
                .sum();
            ensure!(
                total == wreath_order(cs.group_order(), n),
                "{name}: class sizes at n = {n}"
            );
        }
    }

    let series_cases = [
        (classes(CatalogKind::Cyclic, 3), 2u64),
        (classes(CatalogKind::Cyclic, 2), 3),
        (classes(CatalogKind::Symmetric, 3), 2),
        (trivial(), 2),
    ];
    for (cs, r) in &series_cases {
        let f = genfun_prob_wreath(cs, p(*r), 6);
        for n in 1..=6u32 {
            ensure!(
                f.coeff(n as usize) == &prob_r_wreath(cs, n, p(*r)),
                "series coefficient {n} for |G| = {}, r = {r}",
                cs.group_order()
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 10] = [
        ("1 C2 wr S2 types and cycle index", c2_wr_s2_types),
        ("2 S3 wr S2 class sizes", s3_wr_s2_sizes),
        ("3 C3 wr S3 squares", c3_wr_s3_squares),
        ("4 S3 wr S3 squares", s3_wr_s3_squares),
        ("5 |omega_2(C3 wr S4)| = 810 != 972", c3_wr_s4_not_product),
        ("6 partition counts p, p_2, p_2'", table_one),
        ("7 plateaus", plateaus),
        ("8 composite exponent gate", composite_exponent),
        (
            "9 P_2(S3) = P_2(S4) = 1/2, P_2(C2 wr S3) = 1/4",
            squares_in_small_groups,
        ),
        ("10 property suites", property_suites),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let result =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        match result {
            Ok(()) => println!("PASS criterion {name}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    println!("{} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
