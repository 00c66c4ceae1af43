//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::Instant;

use eqloc::{localize_parallel, ResultDocument, Status};
use eqloc_core::action::{FixedPoint, LocalizationProblem, Sign, Weight};
use eqloc_core::{
    integrate_top, localize, spaces, ClassExpr, FactoredRational, LinearForm, Monomial, Polynomial, Scalar,
};
use num_bigint::BigInt;
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestError, TestRng, TestRunner};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn scalar(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

fn cli(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_eqloc")).args(args).output().map_err(|e| e.to_string())?;
    let stdout = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("eqloc {args:?} exited {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    Ok(stdout)
}

fn cli_first_line(args: &[&str]) -> Result<String, String> {
    Ok(cli(args)?.lines().next().unwrap_or_default().to_string())
}

fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `(part, multiplicity)` pairs, largest part first.
type Partition = Vec<(usize, u32)>;

/// Partitions of `n` into parts ≤ `max_part`.
fn partitions(n: usize, max_part: usize) -> Vec<Partition> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for k in (1..=max_part.min(n)).rev() {
        for mut rest in partitions(n - k, k) {
            match rest.iter_mut().find(|(j, _)| *j == k) {
                Some((_, a)) => *a += 1,
                None => rest.insert(0, (k, 1)),
            }
            out.push(rest);
        }
    }
    out
}

fn chern_monomial(parts: &[(usize, u32)]) -> ClassExpr {
    parts
        .iter()
        .map(|&(k, a)| ClassExpr::power(ClassExpr::Chern(k as u32), a))
        .reduce(ClassExpr::product)
        .unwrap_or_else(|| ClassExpr::int(1))
}

/// Every monomial `Π c_k^{a_k} · e^b` of cohomological degree `2d` on a space
/// of complex dimension `n`.
fn monomials(d: usize, n: usize) -> Vec<ClassExpr> {
    let mut out = Vec::new();
    for b in 0..=d.checked_div(n).unwrap_or(0) {
        for parts in partitions(d - b * n, n) {
            let mut m = chern_monomial(&parts);
            if b > 0 {
                m = ClassExpr::product(m, ClassExpr::power(ClassExpr::Euler, b as u32));
            }
            out.push(m);
        }
    }
    out
}

fn built_in_spaces() -> Vec<(String, LocalizationProblem)> {
    let s = spaces::sphere_rotation();
    let cp = spaces::projective_space;
    vec![
        ("sphere".into(), s.clone()),
        ("cpn:1".into(), cp(1)),
        ("cpn:2".into(), cp(2)),
        ("cpn:3".into(), cp(3)),
        ("cpn:4".into(), cp(4)),
        ("sphere x sphere".into(), spaces::product(&s, &s)),
        ("sphere x cpn:1".into(), spaces::product(&s, &cp(1))),
        ("cpn:1 x cpn:1".into(), spaces::product(&cp(1), &cp(1))),
        ("sphere x cpn:2".into(), spaces::product(&s, &cp(2))),
        ("cpn:1 x cpn:2".into(), spaces::product(&cp(1), &cp(2))),
        ("sphere x sphere x sphere".into(), spaces::product(&spaces::product(&s, &s), &s)),
    ]
}

/// V − E + F of a triangulated surface given by its triangles.
fn triangulation_euler(faces: &[[u32; 3]]) -> i64 {
    let mut vertices = BTreeSet::new();
    let mut edges = BTreeSet::new();
    for f in faces {
        for i in 0..3 {
            vertices.insert(f[i]);
            let (a, b) = (f[i], f[(i + 1) % 3]);
            edges.insert((a.min(b), a.max(b)));
        }
    }
    vertices.len() as i64 - edges.len() as i64 + faces.len() as i64
}

fn sphere_euler_characteristic() -> Check {
    let tetrahedron = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
    let octahedron = [[0, 2, 4], [0, 2, 5], [0, 3, 4], [0, 3, 5], [1, 2, 4], [1, 2, 5], [1, 3, 4], [1, 3, 5]];
    let oracle = triangulation_euler(&tetrahedron);
    ensure!(oracle == 2 && triangulation_euler(&octahedron) == 2, "triangulation oracle gave {oracle}");
    // rotation about the axis: zeros at the poles, index +1 each
    let s = spaces::sphere_rotation();
    let index_sum: i64 = s.points().iter().map(|p| p.sign().as_i64()).sum();
    ensure!(index_sum == oracle, "index sum {index_sum}");
    let out = cli(&["euler", "--space", "sphere"])?;
    ensure!(out == format!("{oracle}\nfixed points: 2\n"), "eqloc euler printed {out:?}");
    Ok(())
}

fn projective_euler_characteristics() -> Check {
    for n in 1..=5usize {
        let id = format!("cpn:{n}");
        let out = cli(&["euler", "--space", &id])?;
        ensure!(out == format!("{}\nfixed points: {}\n", n + 1, n + 1), "{id}: {out:?}");
        let p = spaces::projective_space(n);
        ensure!(eqloc_core::euler_characteristic(&p) == Ok(n + 1), "{id}: library disagrees");
        ensure!(integrate_top(&p, &ClassExpr::Euler) == Ok(scalar(n as i64 + 1)), "{id}: integral of e");
    }
    Ok(())
}

fn chern_numbers() -> Check {
    // oracle table, built before the engine is consulted
    let mut table: Vec<(usize, Partition, u64)> = Vec::new();
    for n in 1..=4usize {
        for parts in partitions(n, n) {
            let value = parts.iter().map(|&(k, a)| binomial(n as u64 + 1, k as u64).pow(a)).product();
            table.push((n, parts, value));
        }
    }
    // (n, class, its partition, value)
    let named: [(usize, &str, &Partition, u64); 6] = [
        (1, "c1", &vec![(1, 1)], 2),
        (2, "c1^2", &vec![(1, 2)], 9),
        (2, "c2", &vec![(2, 1)], 3),
        (3, "c1^3", &vec![(1, 3)], 64),
        (3, "c1*c2", &vec![(2, 1), (1, 1)], 24),
        (3, "c3", &vec![(3, 1)], 4),
    ];
    ensure!(table.iter().filter(|(n, _, _)| *n == 4).count() == 5, "expected five degree-4 monomials");
    for (n, expr, parts, expected) in named {
        let from_table = table.iter().find(|(m, p, _)| *m == n && p == parts).map(|t| t.2);
        ensure!(from_table == Some(expected), "oracle table has {from_table:?} for {expr} on cpn:{n}");
        let out = cli(&["integrate", "--space", &format!("cpn:{n}"), "--expr", expr, "--top"])?;
        ensure!(out == format!("{expected}\n"), "cpn:{n} {expr}: {out:?}");
    }
    for (n, parts, expected) in &table {
        let e = chern_monomial(parts);
        let got = integrate_top(&spaces::projective_space(*n), &e).map_err(|e| e.to_string())?;
        ensure!(got == scalar(*expected as i64), "cpn:{n} {e}: got {got}, oracle {expected}");
    }
    Ok(())
}

fn cancellation() -> Check {
    let s = spaces::sphere_rotation();
    let terms: Vec<FactoredRational> =
        s.points().iter().map(|p| eqloc_core::localize::point_term(&s, &ClassExpr::int(1), p)).collect();
    let one_over_u = FactoredRational::over_product(Polynomial::one(1), [&[1i64][..]]).map_err(|e| e.to_string())?;
    let one_over_minus_u =
        FactoredRational::over_product(Polynomial::one(1), [&[-1i64][..]]).map_err(|e| e.to_string())?;
    ensure!(terms == [one_over_u.clone(), one_over_minus_u.clone()], "sphere point terms {terms:?}");
    let sum = one_over_u.try_add(&one_over_minus_u).map_err(|e| e.to_string())?;
    ensure!(sum.is_zero() && sum.is_polynomial(), "1/u + 1/(-u) = {sum}");

    let mut checked = 0;
    for (name, p) in built_in_spaces() {
        let n = p.half_dim();
        for d in 0..n {
            for e in monomials(d, n) {
                let r = localize(&p, &e).map_err(|err| format!("{name}, {e}: {err}"))?;
                ensure!(r.value.is_zero(), "{name}, {e}: value {}", r.value);
                let par = localize_parallel(&p, &e).map_err(|err| format!("{name}, {e}: {err}"))?;
                ensure!(par == r, "{name}, {e}: parallel result differs");
                checked += 1;
            }
        }
    }
    // Σ over spaces of the number of monomials below top degree
    ensure!(checked == 33, "checked {checked} cases");
    let json = cli(&["integrate", "--space", "product:cpn:1,cpn:2", "--expr", "c2", "--json"])?;
    let doc: ResultDocument = serde_json::from_str(&json).map_err(|e| e.to_string())?;
    ensure!(doc.status == Status::Polynomial && doc.value.as_deref() == Some("0"), "{json}");
    Ok(())
}

fn degree_mismatch() -> Check {
    let p = spaces::projective_space(1);
    for expr in ["c1^3", "e^3", "c1^2*e", "c1*e^2 + 2*c1^3"] {
        let r = localize(&p, &ClassExpr::parse(expr).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure!(!r.value.is_zero(), "{expr}: zero");
        ensure!(r.value.cohomological_degree() == Some(4), "{expr}: {}", r.value);
        ensure!(r.value.terms().all(|(m, _)| m.total_degree() == 2), "{expr}: inhomogeneous {}", r.value);
    }
    let json = cli(&["integrate", "--space", "cpn:1", "--expr", "c1^3", "--json"])?;
    let doc: ResultDocument = serde_json::from_str(&json).map_err(|e| e.to_string())?;
    let value = doc.parsed_value().ok_or("no value")?;
    ensure!(doc.status == Status::Polynomial, "{json}");
    ensure!(!value.is_zero() && value.cohomological_degree() == Some(4), "{value}");
    ensure!(doc.class_degree == Some(6) && doc.dimension == Some(2), "{json}");
    Ok(())
}

/// A random homogeneous class of half-degree `d`: an integer combination of
/// one to three monomials.
fn homogeneous_expr(n: usize) -> impl Strategy<Value = ClassExpr> {
    (0..=n + 2).prop_flat_map(move |d| {
        let pool = monomials(d, n);
        let len = pool.len();
        proptest::collection::vec((0..len, 1u64..10, proptest::bool::ANY), 1..=3).prop_map(move |picks| {
            picks
                .into_iter()
                .map(|(i, c, neg)| (ClassExpr::product(ClassExpr::int(c), pool[i].clone()), neg))
                .reduce(|(acc, _), (m, neg)| {
                    (if neg { ClassExpr::difference(acc, m) } else { ClassExpr::sum(acc, m) }, false)
                })
                .map(|(e, _)| e)
                .unwrap()
        })
    })
}

fn specialization() -> Check {
    let mut rng_runner = runner(1);
    for n in 1..=3usize {
        let p = spaces::projective_space(n);
        let xi: Vec<i64> = (0..=n as i64).collect();
        let circle = p.circle_reduce(&xi).map_err(|e| e.to_string())?;
        let strategy = homogeneous_expr(n);
        for _ in 0..20 {
            let e = strategy.new_tree(&mut rng_runner).map_err(|e| e.to_string())?.current();
            let torus = localize(&p, &e).map_err(|err| format!("cpn:{n}, {e}: {err}"))?;
            let reduced = localize(&circle, &e).map_err(|err| format!("cpn:{n}, {e}: {err}"))?;
            ensure!(torus.value.substitute(&xi).map_err(|e| e.to_string())? == reduced.value, "cpn:{n}, {e}: values");
            ensure!(torus.per_point_terms.len() == reduced.per_point_terms.len(), "cpn:{n}: point counts");
            for ((a, t), (b, r)) in torus.per_point_terms.iter().zip(&reduced.per_point_terms) {
                ensure!(a == b, "cpn:{n}: labels {a} vs {b}");
                let t = t.substitute(&xi).map_err(|e| e.to_string())?;
                ensure!(&t == r, "cpn:{n}, {e}, {a}: {t} vs {r}");
            }
        }
    }
    Ok(())
}

fn poly(rank: usize) -> impl Strategy<Value = Polynomial> {
    let term = (proptest::collection::vec(0u32..=4, rank), -9i64..=9);
    proptest::collection::vec(term, 0..6).prop_map(move |terms| {
        Polynomial::from_terms(
            rank,
            terms.into_iter().map(|(mut e, c)| {
                while e.iter().sum::<u32>() > 4 {
                    let i = e.iter().position(|&x| x > 0).unwrap();
                    e[i] -= 1;
                }
                (Monomial::new(e), scalar(c))
            }),
        )
    })
}

fn nonzero_vec(rank: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-3i64..=3, rank).prop_filter("nonzero", |v| v.iter().any(|&a| a != 0))
}

fn factored(rank: usize) -> impl Strategy<Value = FactoredRational> {
    (poly(rank), proptest::collection::vec(nonzero_vec(rank), 0..3))
        .prop_map(|(p, ws)| FactoredRational::over_product(p, ws.iter().map(Vec::as_slice)).unwrap())
}

fn class_expr() -> impl Strategy<Value = ClassExpr> {
    let leaf = proptest::prop_oneof![
        (0u64..5).prop_map(ClassExpr::int),
        (1u32..=4).prop_map(ClassExpr::Chern),
        proptest::strategy::Just(ClassExpr::Euler),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        proptest::prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ClassExpr::sum(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ClassExpr::difference(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ClassExpr::product(a, b)),
            (inner, 0u32..3).prop_map(|(a, k)| ClassExpr::power(a, k)),
        ]
    })
}

fn fixed_point() -> impl Strategy<Value = (usize, FixedPoint)> {
    (1usize..=3, 0usize..=3).prop_flat_map(|(rank, n)| {
        (proptest::collection::vec(nonzero_vec(rank), n), proptest::bool::ANY).prop_map(move |(ws, neg)| {
            let sign = if neg { Sign::Negative } else { Sign::Positive };
            (rank, FixedPoint::new("p", ws.into_iter().map(Weight::new).collect(), sign))
        })
    })
}

fn fail(msg: String) -> TestCaseError {
    TestCaseError::fail(msg)
}

fn report<T: std::fmt::Debug>(name: &str, r: Result<(), TestError<T>>) -> Check {
    r.map_err(|e| format!("{name}: {e:?}"))
}

fn property_suites() -> Check {
    const CASES: u32 = 1000;
    let triple = (1usize..=3).prop_flat_map(|r| (poly(r), poly(r), poly(r)));
    report(
        "ring axioms",
        runner(CASES).run(&triple, |(a, b, c)| {
            let checks = [
                (&(&a + &b) + &c == &a + &(&b + &c), "additive associativity"),
                (&a + &b == &b + &a, "additive commutativity"),
                (&(&a * &b) * &c == &a * &(&b * &c), "multiplicative associativity"),
                (&a * &b == &b * &a, "multiplicative commutativity"),
                (&a * &(&b + &c) == &(&a * &b) + &(&a * &c), "distributivity"),
                ((&a + &(-&a)).is_zero(), "additive inverse"),
                (&a * &Polynomial::one(a.rank()) == a, "unit"),
            ];
            match checks.iter().find(|(ok, _)| !ok) {
                Some((_, law)) => Err(fail(format!("{law} fails for {a}, {b}, {c}"))),
                None => Ok(()),
            }
        }),
    )?;

    let division = (1usize..=3).prop_flat_map(|r| (poly(r), nonzero_vec(r), poly(r)));
    report(
        "exact division",
        runner(CASES).run(&division, |(q, f, p)| {
            let (content, form) = LinearForm::primitive(&f).map_err(|e| fail(e.to_string()))?;
            let product = &q * &Polynomial::linear(&f);
            let quotient = product.divide_linear(&form).map_err(|e| fail(format!("{product} / {form}: {e}")))?;
            if &quotient * &form.to_polynomial() != product || quotient.scale(&scalar(content).recip()) != q {
                return Err(fail(format!("round trip of {q} through {form}")));
            }
            if let Ok(r) = p.divide_linear(&form) {
                if &r * &form.to_polynomial() != p {
                    return Err(fail(format!("{p} / {form} = {r} is wrong")));
                }
            }
            Ok(())
        }),
    )?;

    let fracs = (1usize..=3).prop_flat_map(|r| (factored(r), factored(r), factored(r)));
    report(
        "fraction addition",
        runner(CASES).run(&fracs, |(a, b, c)| {
            let add = |x: &FactoredRational, y: &FactoredRational| x.try_add(y).map_err(|e| fail(e.to_string()));
            let ab = add(&a, &b)?;
            if ab != add(&b, &a)? {
                return Err(fail(format!("({a}) + ({b}) not commutative")));
            }
            if add(&ab, &c)? != add(&a, &add(&b, &c)?)? {
                return Err(fail(format!("({a}) + ({b}) + ({c}) not associative")));
            }
            Ok(())
        }),
    )?;

    let restriction = (class_expr(), class_expr(), fixed_point());
    report(
        "restriction",
        runner(CASES).run(&restriction, |(a, b, (rank, pt))| {
            let r = |e: &ClassExpr| e.restrict(&pt, rank);
            if r(&ClassExpr::sum(a.clone(), b.clone())) != &r(&a) + &r(&b) {
                return Err(fail(format!("sum: {a}, {b}")));
            }
            if r(&ClassExpr::difference(a.clone(), b.clone())) != &r(&a) - &r(&b) {
                return Err(fail(format!("difference: {a}, {b}")));
            }
            if r(&ClassExpr::product(a.clone(), b.clone())) != &r(&a) * &r(&b) {
                return Err(fail(format!("product: {a}, {b}")));
            }
            if r(&ClassExpr::int(3)) != Polynomial::from_i64(rank, 3) {
                return Err(fail("constants".into()));
            }
            Ok(())
        }),
    )?;
    Ok(())
}

fn products() -> Check {
    // χ is multiplicative: χ(ℂPᵃ × ℂPᵇ) = (a + 1)(b + 1)
    for (a, b) in [(1usize, 1usize), (1, 2)] {
        let id = format!("product:cpn:{a},cpn:{b}");
        let expected = (a + 1) * (b + 1);
        let out = cli_first_line(&["euler", "--space", &id])?;
        ensure!(out == expected.to_string(), "{id}: euler printed {out}");
        let out = cli_first_line(&["integrate", "--space", &id, "--expr", "e", "--top"])?;
        ensure!(out == expected.to_string(), "{id}: integral of e printed {out}");
    }
    let p = spaces::product(&spaces::projective_space(1), &spaces::projective_space(1));
    ensure!(integrate_top(&p, &ClassExpr::Euler) == Ok(scalar(4)), "library integral of e");
    Ok(())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("sphere Euler characteristic", sphere_euler_characteristic),
        ("projective space Euler characteristics", projective_euler_characteristics),
        ("Chern numbers of projective spaces", chern_numbers),
        ("cancellation below top degree", cancellation),
        ("polynomial-valued integrals above top degree", degree_mismatch),
        ("specialization to a circle", specialization),
        ("arithmetic property suites", property_suites),
        ("products", products),
    ];
    let suite = Instant::now();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let ms = start.elapsed().as_millis();
        match result {
            Ok(()) => println!("criterion {}: PASS  {name} ({ms} ms)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({ms} ms): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} passed in {} ms", criteria.len() - failed, criteria.len(), suite.elapsed().as_millis());
    if failed > 0 {
        std::process::exit(1);
    }
}
