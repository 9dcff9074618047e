//! The acceptance suite. Prints one line per criterion and exits non-zero
//! on any failure not listed in `expected_failure`.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use axial::axes::{flip_symmetry_check, full_span, is_primitive, verify_fusion, Axis, FusionLaw};
use axial::fischer::build_space;
use axial::flip::{
    compare_tables, configuration, generate_from_axes, nonsymmetric_case, parse_table, series,
    table_of, BasisMatching, SeriesKind, NONSYMMETRIC_IDS,
};
use axial::groups::generate_class;
use axial::linalg::Matrix;
use axial::matsuo::{Element, MatsuoAlgebra};
use axial::scalar::{int, rat, RatFunc, Rational, UniPoly};
use axial::structure::{
    gram_matrix, interpolation_determinant, johnson_spectrum, qk_closed_form, radical_basis,
    symbolic_determinant, QkBasis,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|x| x.to_string())
}

const SPACES: [(u8, usize); 4] = [(1, 4), (1, 5), (2, 4), (3, 4)];

fn matsuo(p: u8, n: usize) -> Result<MatsuoAlgebra<RatFunc>, String> {
    let cls = e(generate_class(p, n))?;
    Ok(MatsuoAlgebra::symbolic(e(build_space(&cls))?))
}

fn doubles(alg: &MatsuoAlgebra<RatFunc>) -> Vec<Axis> {
    let n = alg.dim();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if !alg.space().collinear(a, b) {
                out.push(Axis::Double(a, b));
            }
        }
    }
    out
}

fn fusion_laws() -> Check {
    let eta = RatFunc::eta();
    let jordan = e(FusionLaw::jordan(eta.clone()))?;
    let monster = e(FusionLaw::monster(eta.clone() + &eta, eta))?;
    let mut counts = (0, 0);
    for (p, n) in SPACES {
        let alg = matsuo(p, n)?;
        let span = full_span(&alg);
        for a in 0..alg.dim() {
            let r = e(verify_fusion(&alg, &Axis::Single(a), &jordan, &span))?;
            ensure(r.holds(), || format!("{} fails {:?}", r.axis, r.violations))?;
            counts.0 += 1;
        }
        for d in doubles(&alg) {
            let r = e(verify_fusion(&alg, &d, &monster, &span))?;
            ensure(r.holds(), || format!("{} fails {:?}", r.axis, r.violations))?;
            counts.1 += 1;
        }
    }
    Ok(format!(
        "{} single and {} double axes, no violations",
        counts.0, counts.1
    ))
}

fn miyamoto_identity() -> Check {
    let mut count = 0;
    for (p, n) in SPACES {
        let alg = matsuo(p, n)?;
        let tau: Vec<Matrix<RatFunc>> = (0..alg.dim())
            .map(|a| e(alg.miyamoto_matrix(&Axis::Single(a))))
            .collect::<Result<_, _>>()?;
        for d in doubles(&alg) {
            let Axis::Double(a, b) = d else {
                unreachable!()
            };
            let lhs = e(alg.miyamoto_matrix(&d))?;
            ensure(lhs == e(tau[a].mul(&tau[b]))?, || {
                format!("{} in p={p} n={n}", d.describe(alg.space()))
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} double axes"))
}

const TABLE_CASES: [&str; 6] = ["A3", "B6p2", "B6p3", "C4", "C5p2", "C5p3"];

/// Per case: `Ok(())` on a match, otherwise the differing fixture entries.
fn table_regressions() -> Result<BTreeMap<&'static str, Vec<String>>, String> {
    let mut diffs = BTreeMap::new();
    for id in TABLE_CASES {
        let case = e(configuration(id))?;
        let alg = &case.algebra;
        let sub = e(generate_from_axes(alg, &case.generators, alg.dim()))?;
        let fixture = e(case.fixture_table().unwrap())?;
        let diff = e(compare_tables(
            &e(table_of(alg, &sub))?,
            &fixture,
            BasisMatching::UpToPermutation,
        ))?;
        if !diff.equal {
            let entries = diff
                .mismatches
                .iter()
                .map(|m| format!("{}*{}", fixture.labels[m.i], fixture.labels[m.j]))
                .collect();
            diffs.insert(id, entries);
        }
    }
    Ok(diffs)
}

fn tables() -> Check {
    let diffs = table_regressions()?;
    if diffs.is_empty() {
        return Ok(format!("{} tables match", TABLE_CASES.len()));
    }
    let summary: Vec<String> = diffs
        .iter()
        .map(|(id, entries)| format!("{id} differs at {}", entries.join(", ")))
        .collect();
    Err(format!(
        "{} of {} tables match; {}",
        TABLE_CASES.len() - diffs.len(),
        TABLE_CASES.len(),
        summary.join("; ")
    ))
}

fn case_gram(id: &str) -> Result<Matrix<RatFunc>, String> {
    let case = e(configuration(id))?;
    let sub = e(generate_from_axes(
        &case.algebra,
        &case.generators,
        case.algebra.dim(),
    ))?;
    e(gram_matrix(&case.algebra, sub.rows()))
}

const DETERMINANTS: [(&str, &str); 5] = [
    ("B6p2", "1024*eta^3 - 768*eta^2 + 64"),
    (
        "B6p3",
        "-448*eta^8 + 4864*eta^7 - 21808*eta^6 + 51664*eta^5 - 68320*eta^4 + 48256*eta^3 - 14848*eta^2 + 256*eta + 512",
    ),
    ("C4", "128*eta^3 - 96*eta^2 + 8"),
    ("C5p2", "256*eta^3 - 192*eta^2 + 16"),
    (
        "C5p3",
        "7*eta^12 - 111*eta^11 + 3051/4*eta^10 - 2939*eta^9 + 27153/4*eta^8 - 8964*eta^7 + 4452*eta^6 + 5040*eta^5 - 10152*eta^4 + 6976*eta^3 - 1920*eta^2 + 64",
    ),
];

fn determinants() -> Check {
    for (id, expected) in DETERMINANTS {
        let det = e(symbolic_determinant(&case_gram(id)?))?;
        let expected = e(UniPoly::parse(expected))?;
        ensure(det == expected, || format!("{id}: got {det}"))?;
    }
    Ok(format!("{} polynomials equal", DETERMINANTS.len()))
}

fn qk_closed_forms() -> Check {
    for k in 2..=5usize {
        let q = e(QkBasis::new(k))?;
        let det = e(symbolic_determinant(&e(gram_matrix(
            &q.algebra,
            &q.standard(),
        ))?))?;
        ensure(det == qk_closed_form(k), || format!("k={k}: got {det}"))?;
        let mut expected = vec![rat(-1, 2 * (k as i64 - 1))];
        if k > 2 {
            expected.push(rat(-1, k as i64 - 2));
        }
        expected.sort();
        let roots: Vec<Rational> = e(det.rational_roots())?
            .into_keys()
            .filter(|r| *r != int(1))
            .collect();
        ensure(roots == expected, || format!("k={k}: roots {roots:?}"))?;
    }
    Ok("k = 2..5, critical values -1/(2(k-1)) and -1/(k-2)".into())
}

/// Name, algebra, basis, η and the expected radical dimension.
type RadicalCheck = (
    String,
    MatsuoAlgebra<RatFunc>,
    Vec<Element<RatFunc>>,
    Rational,
    usize,
);

fn radicals() -> Check {
    let mut checks: Vec<RadicalCheck> = Vec::new();
    for (k, eta, dim) in [(2, rat(-1, 2), 1), (4, rat(-1, 6), 1), (4, rat(-1, 2), 3)] {
        let q = e(QkBasis::new(k))?;
        checks.push((format!("Q{k}"), q.algebra.clone(), q.standard(), eta, dim));
    }
    for (id, eta, dim) in [
        ("C4", rat(-1, 4), 1),
        ("B6p3", rat(-1, 7), 1),
        ("B6p3", int(2), 5),
    ] {
        let case = e(configuration(id))?;
        let sub = e(generate_from_axes(
            &case.algebra,
            &case.generators,
            case.algebra.dim(),
        ))?;
        checks.push((id.into(), case.algebra, sub.rows().to_vec(), eta, dim));
    }
    for (name, alg, basis, eta, dim) in &checks {
        let r = e(radical_basis(alg, basis, eta))?;
        ensure(r.dim() == *dim && r.is_ideal, || {
            format!("{name} at {eta}: dim {} ideal {}", r.dim(), r.is_ideal)
        })?;
    }
    Ok(format!(
        "{} radicals with the expected nullity, all ideals",
        checks.len()
    ))
}

fn all_doubles_primitive(s: &axial::flip::SeriesResult) -> Result<bool, String> {
    for d in &s.subalgebra.classification.doubles {
        if !e(is_primitive(&s.algebra, d, s.subalgebra.basis.echelon()))? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn flip_counts() -> Check {
    for k in 1..=5 {
        let s = e(series(SeriesKind::Qk, k, 0))?;
        let c = &s.subalgebra.classification;
        let got = (
            c.singles.len(),
            c.doubles.len(),
            c.extras.len(),
            s.subalgebra.basis.dim(),
        );
        ensure(
            got == (k, k * k - k, 0, k * k) && s.subalgebra.equals_fixed,
            || format!("k={k}: {got:?}"),
        )?;
    }
    for (n, k) in [(6, 2), (8, 3)] {
        let s = e(series(SeriesKind::Qk, k, n - 2 * k))?;
        let split = s.split.clone().unwrap();
        let m = n - 2 * k;
        ensure(
            split.holds && split.moved_dim == k * k && split.fixed_dim == m * (m - 1) / 2,
            || format!("n={n} k={k}: {split:?}"),
        )?;
    }
    for k in 2..=3 {
        for (kind, mult) in [(SeriesKind::TwoQk, 2), (SeriesKind::ThreeQk, 3)] {
            let s = e(series(kind, k, 0))?;
            ensure(s.subalgebra.basis.dim() == mult * k * k, || {
                format!("{kind} k={k}: dim {}", s.subalgebra.basis.dim())
            })?;
        }
    }
    Ok("Q_1..Q_5, two splittings, 2Q_k and 3Q_k for k = 2, 3".into())
}

fn primitivity() -> Check {
    let mut built = 0;
    for (kind, ks) in [
        (SeriesKind::Qk, 1..=5),
        (SeriesKind::TwoQk, 1..=3),
        (SeriesKind::ThreeQk, 1..=3),
    ] {
        for k in ks {
            for m in [0, 2] {
                if 2 * k + m > 10 || (kind != SeriesKind::Qk && m > 0) {
                    continue;
                }
                let s = e(series(kind, k, m))?;
                ensure(all_doubles_primitive(&s)?, || format!("{kind} k={k} m={m}"))?;
                built += 1;
            }
        }
    }
    for id in NONSYMMETRIC_IDS {
        let case = e(nonsymmetric_case(id))?;
        let alg = &case.algebra;
        ensure(
            !e(flip_symmetry_check(alg.space(), &case.generators))?,
            || format!("{id} has flip symmetry"),
        )?;
        let sub = e(generate_from_axes(alg, &case.generators, alg.dim()))?;
        let mut found = false;
        for g in case.generators.iter().filter(|g| g.is_double()) {
            let inside = g.points().iter().any(|&p| sub.contains(&alg.point(p)));
            if inside {
                ensure(!e(is_primitive(alg, g, sub.echelon()))?, || {
                    format!("{id}: {} still primitive", g.describe(alg.space()))
                })?;
                found = true;
            }
        }
        ensure(found, || format!("{id}: no support single"))?;
    }
    Ok(format!(
        "doubles primitive in {built} flip subalgebras; A2, B2, B3, B5 contain a support single"
    ))
}

/// Whether `x, y` generate `3C(α)`: a third idempotent `z` with
/// `uv = (α/2)(u + v − w)` for every pair.
fn is_3c(
    alg: &MatsuoAlgebra<RatFunc>,
    x: &Axis,
    y: &Axis,
    alpha: &RatFunc,
) -> Result<bool, String> {
    let sub = e(generate_from_axes(alg, &[*x, *y], alg.dim()))?;
    if sub.dim() != 3 {
        return Ok(false);
    }
    let (x, y) = (alg.axis_element(x), alg.axis_element(y));
    let xy = e(alg.product(&x, &y))?;
    let c = RatFunc::constant(int(2)) * e(alpha.inverse())?;
    let z: Element<RatFunc> = (0..x.len())
        .map(|i| x[i].clone() + y[i].clone() - c.clone() * xy[i].clone())
        .collect();
    let half = alpha.clone() * RatFunc::constant(rat(1, 2));
    let rule = |u: &Element<RatFunc>, v: &Element<RatFunc>, w: &Element<RatFunc>| {
        let uv = alg.product(u, v).unwrap();
        (0..u.len()).all(|i| uv[i] == half.clone() * (u[i].clone() + v[i].clone() - w[i].clone()))
    };
    Ok(e(alg.product(&z, &z))? == z && rule(&x, &z, &y) && rule(&y, &z, &x) && rule(&x, &y, &z))
}

fn is_2b(alg: &MatsuoAlgebra<RatFunc>, x: &Axis, y: &Axis) -> Result<bool, String> {
    let sub = e(generate_from_axes(alg, &[*x, *y], alg.dim()))?;
    let xy = e(alg.product(&alg.axis_element(x), &alg.axis_element(y)))?;
    Ok(sub.dim() == 2 && xy.iter().all(|c| *c == RatFunc::default()))
}

fn catalogue() -> Check {
    let eta = RatFunc::eta();
    let two_eta = eta.clone() + &eta;
    let pair = |id: &str| -> Result<(MatsuoAlgebra<RatFunc>, Axis, Axis), String> {
        let c = e(configuration(id))?;
        Ok((c.algebra, c.generators[0], c.generators[1]))
    };
    let (alg, x, y) = pair("B4")?;
    ensure(is_3c(&alg, &x, &y, &eta)?, || "B4 is not 3C(eta)".into())?;
    let (alg, x, y) = pair("B6p1")?;
    ensure(is_3c(&alg, &x, &y, &two_eta)?, || {
        "B6p1 is not 3C(2eta)".into()
    })?;
    for id in ["A1", "B1"] {
        let (alg, x, y) = pair(id)?;
        ensure(is_2b(&alg, &x, &y)?, || format!("{id} is not 2B"))?;
    }

    // a1 a2 a3 | b12 c12 b13 c13 b23 c23
    let q = e(QkBasis::new(3))?;
    let ax = q.axes();
    let alg = &q.algebra;
    ensure(is_2b(alg, &ax[0], &ax[1])?, || "a1, a2 not 2B".into())?;
    let sub = e(generate_from_axes(alg, &[ax[0], ax[3]], alg.dim()))?;
    let fixture = e(parse_table(include_str!("../fixtures/q2.table")))?;
    let diff = e(compare_tables(
        &e(table_of(alg, &sub))?,
        &fixture,
        BasisMatching::UpToPermutation,
    ))?;
    ensure(diff.equal, || "a1, b12 do not give Q2".into())?;
    ensure(is_3c(alg, &ax[3], &ax[5], &eta)?, || {
        "b12, b13 not 3C(eta)".into()
    })?;
    ensure(is_3c(alg, &ax[3], &ax[4], &two_eta)?, || {
        "b12, c12 not 3C(2eta)".into()
    })?;
    Ok("B4, B6p1, A1, B1 and the four pairs inside Q_3".into())
}

fn random_element(rng: &mut StdRng, rows: &[Element<RatFunc>]) -> Element<RatFunc> {
    let mut v = vec![RatFunc::default(); rows[0].len()];
    for r in rows {
        let c = RatFunc::constant(int(rng.random_range(-3..=3)));
        for (x, y) in v.iter_mut().zip(r) {
            *x = x.clone() + c.clone() * y.clone();
        }
    }
    v
}

fn oracles() -> Check {
    let mut grams: Vec<(String, Matrix<RatFunc>)> = DETERMINANTS
        .iter()
        .map(|(id, _)| Ok((id.to_string(), case_gram(id)?)))
        .collect::<Result<_, String>>()?;
    for k in 2..=5 {
        let q = e(QkBasis::new(k))?;
        grams.push((format!("Q{k}"), e(gram_matrix(&q.algebra, &q.standard()))?));
    }
    for (name, g) in &grams {
        let a = e(symbolic_determinant(g))?;
        let b = e(interpolation_determinant(g))?;
        ensure(a == b, || format!("{name}: {a} vs {b}"))?;
    }

    let mut rng = StdRng::seed_from_u64(20240917);
    let mut algebras: Vec<(String, MatsuoAlgebra<RatFunc>, Vec<Element<RatFunc>>)> = Vec::new();
    for (p, n) in SPACES {
        let alg = matsuo(p, n)?;
        let pts = (0..alg.dim()).map(|i| alg.point(i)).collect();
        algebras.push((format!("p={p} n={n}"), alg, pts));
    }
    for (id, _) in DETERMINANTS {
        let case = e(configuration(id))?;
        let sub = e(generate_from_axes(
            &case.algebra,
            &case.generators,
            case.algebra.dim(),
        ))?;
        algebras.push((id.to_string(), case.algebra, sub.rows().to_vec()));
    }
    for (name, alg, rows) in &algebras {
        for _ in 0..1000 {
            let [u, v, w] = [0; 3].map(|_| random_element(&mut rng, rows));
            let lhs = e(alg.frobenius(&e(alg.product(&u, &v))?, &w))?;
            let rhs = e(alg.frobenius(&u, &e(alg.product(&v, &w))?))?;
            ensure(lhs == rhs, || format!("{name}: (uv,w) != (u,vw)"))?;
        }
    }

    for k in [4usize, 5] {
        let pairs: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .collect();
        let n = pairs.len();
        let adj = Matrix::from_fn(n, n, |r, s| {
            let (a, b) = (pairs[r], pairs[s]);
            let meet = [a.0, a.1].iter().filter(|t| [b.0, b.1].contains(t)).count();
            if meet == 1 {
                int(1)
            } else {
                int(0)
            }
        });
        let spec = johnson_spectrum(k);
        let total: usize = spec.iter().map(|&(_, m)| m).sum();
        ensure(total == n, || {
            format!("J({k},2): multiplicities sum to {total}")
        })?;
        for (theta, m) in spec {
            let nullity = n - adj.sub_scalar_identity(&int(theta)).rank();
            ensure(nullity == m, || {
                format!("J({k},2): eigenvalue {theta} has nullity {nullity}")
            })?;
        }
    }
    Ok(format!(
        "{} determinants, 1000 triples in each of {} algebras, J(4,2) and J(5,2)",
        grams.len(),
        algebras.len()
    ))
}

/// The bundled C4 table carries three wrong double-by-double products;
/// the computed algebra fails only there.
fn expected_failure(n: usize) -> Option<Result<(), String>> {
    (n == 3).then(|| {
        let diffs = table_regressions()?;
        let c4 = vec!["d1*d2".to_string(), "d1*d3".into(), "d2*d3".into()];
        let known = BTreeMap::from([("C4", c4)]);
        ensure(diffs.is_empty() || diffs == known, || {
            format!("unexpected diff {diffs:?}")
        })
    })
}

type Criterion = (&'static str, fn() -> Check);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("fusion laws of single and double axes", fusion_laws),
        ("Miyamoto involution of a double axis", miyamoto_identity),
        ("multiplication tables against fixtures", tables),
        ("Gram determinant polynomials", determinants),
        ("Q_k determinant closed form", qk_closed_forms),
        ("radicals at critical eta", radicals),
        ("flip construction counts", flip_counts),
        ("primitivity and flip symmetry", primitivity),
        ("two-generated catalogue", catalogue),
        ("oracle equivalence", oracles),
    ];
    let results: Vec<(Check, f64)> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|&(_, f)| {
                s.spawn(move || {
                    let t = Instant::now();
                    let r = f();
                    (r, t.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut unexpected = 0;
    for (i, ((name, _), (r, secs))) in criteria.iter().zip(&results).enumerate() {
        let n = i + 1;
        match r {
            Ok(msg) => println!("criterion {n:2} PASS  {name}: {msg} ({secs:.1}s)"),
            Err(msg) => {
                let known = match expected_failure(n) {
                    Some(Ok(())) => " [known: bundled C4 table is wrong at these entries]",
                    _ => {
                        unexpected += 1;
                        ""
                    }
                };
                println!("criterion {n:2} FAIL  {name}: {msg}{known} ({secs:.1}s)");
            }
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
