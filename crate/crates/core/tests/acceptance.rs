//! Acceptance suite: one PASS/FAIL line per criterion, with pinned time limits.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use borcherds::cartan::{CartanDatum, RootWeight, Weight};
use borcherds::characters::{diff, formula_character, CharacterSeries};
use borcherds::freesuper::{divided_power, exdegrees_up_to_height, roots_up_to_height, Letter, Word};
use borcherds::linalg::QMatrix;
use borcherds::modules::{
    brute_character, check_highest_weight_properties, check_oint, irreducible_quotient, HighestWeightSlice,
    QuotientSlice, VermaSlice,
};
use borcherds::pairing::{form, gram_block, serre_type_relations, PlusSpace, RelationKind};
use borcherds::rtheta::{
    compute_theta, generators, recursion_failures, relative_casimir_exponent, verify_intertwiner, verify_inverse,
    check_singular_casimir, Casimir, ThetaSign,
};
use borcherds::scalar::{super_qbinom, super_qfact};
use borcherds::ualgebra::{UAlgebra, UElement, UMonomial};
use borcherds::{LaurentPoly, QScalar};

type Outcome = Result<(), String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn datum(a: Vec<Vec<i64>>, p: Vec<u8>, d: Vec<i64>) -> CartanDatum {
    CartanDatum::new(a, p, d).expect("valid test datum")
}

fn a1_even() -> CartanDatum {
    datum(vec![vec![2]], vec![0], vec![1])
}
fn a1_odd() -> CartanDatum {
    datum(vec![vec![2]], vec![1], vec![1])
}
fn a2() -> CartanDatum {
    datum(vec![vec![2, -1], vec![-1, 2]], vec![0, 0], vec![2, 2])
}
fn b2() -> CartanDatum {
    datum(vec![vec![2, -2], vec![-1, 2]], vec![0, 0], vec![1, 2])
}
/// Odd real index and an even isotropic imaginary index.
fn borcherds_super() -> CartanDatum {
    datum(vec![vec![2, -2], vec![-1, 0]], vec![1, 0], vec![1, 2])
}
/// A real index and an odd non-isotropic imaginary index.
fn odd_imaginary() -> CartanDatum {
    datum(vec![vec![2, -2], vec![-2, -2]], vec![0, 1], vec![1, 1])
}
/// A real index orthogonal to an even imaginary index.
fn orthogonal() -> CartanDatum {
    datum(vec![vec![2, 0], vec![0, -2]], vec![0, 0], vec![1, 1])
}

fn all_data() -> Vec<CartanDatum> {
    vec![a1_even(), a1_odd(), a2(), b2(), borcherds_super(), odd_imaginary(), orthogonal()]
}

fn w(v: &[i64]) -> Weight {
    Weight::from_coroots(v.to_vec())
}

fn sgn(odd: bool) -> i64 {
    if odd {
        -1
    } else {
        1
    }
}

// 1 ---------------------------------------------------------------------------

fn qbinomial_suite() -> Outcome {
    for n in 1..=8i64 {
        for d in [1i64, 2] {
            for p in [0u8, 1] {
                let mut s = QScalar::zero();
                for t in 0..=n {
                    let e = t + p as i64 * t * (t - 1) / 2;
                    let term = &QScalar::signed_q_pow(sgn(e % 2 == 1), d * t * (n - 1)) * &super_qbinom(n, t as u32, d, p);
                    s += &term;
                }
                ensure(s.is_zero(), || format!("alternating sum nonzero for n={n} d={d} p={p}"))?;
            }
        }
    }
    for a in 0..=6i64 {
        for d in [1i64, 2] {
            for p in [0u8, 1] {
                // prod_{j<a} (1 + ((-1)^p q_i^2)^j z) as coefficients of z^t
                let mut lhs = vec![QScalar::one()];
                for j in 0..a {
                    let c = QScalar::signed_q_pow(sgn(p == 1 && j % 2 == 1), 2 * d * j);
                    let mut next = vec![QScalar::zero(); lhs.len() + 1];
                    for (t, x) in lhs.iter().enumerate() {
                        next[t] += x;
                        next[t + 1] += &(x * &c);
                    }
                    lhs = next;
                }
                for (t, x) in lhs.iter().enumerate() {
                    let ti = t as i64;
                    let e = p as i64 * ti * (ti - 1) / 2;
                    let rhs = &QScalar::signed_q_pow(sgn(e % 2 == 1), d * ti * (a - 1)) * &super_qbinom(a, t as u32, d, p);
                    ensure(*x == rhs, || format!("z-expansion mismatch at a={a} t={t} d={d} p={p}"))?;
                }
            }
        }
    }
    for a in -4..=6i64 {
        for t in 0..=4i64 {
            for d in [1i64, 2] {
                for p in [0u8, 1] {
                    let e = t + p as i64 * (t * a - t * (t - 1) / 2);
                    let rhs = super_qbinom(t - a - 1, t as u32, d, p).mul_signed_q_pow(sgn(e.rem_euclid(2) == 1), 0);
                    let lhs = super_qbinom(a, t as u32, d, p);
                    ensure(lhs == rhs, || format!("negation symmetry fails at a={a} t={t} d={d} p={p}"))?;
                    ensure(lhs.is_laurent(), || format!("binomial not a Laurent polynomial at a={a} t={t}"))?;
                }
            }
        }
    }
    Ok(())
}

// 2 ---------------------------------------------------------------------------

fn bilinear_form_suite() -> Outcome {
    for d in [a1_even(), a1_odd(), borcherds_super()] {
        for nu in exdegrees_up_to_height(&d, 6) {
            let g = gram_block(&d, &nu).gram();
            ensure(g == g.transpose(), || format!("Gram block {} is not symmetric", nu.render(&d)))?;
        }
    }
    for (p, dd) in [(0u8, 1i64), (1, 1), (0, 2), (1, 3)] {
        let d = datum(vec![vec![2]], vec![p], vec![dd]);
        let norm = QScalar::from_poly(&LaurentPoly::one() - &LaurentPoly::signed_q_pow(sgn(p == 1), 2 * dd));
        for n in 0..=5i64 {
            let x = divided_power(&d, 0, n).map_err(|e| e.to_string())?;
            let expected =
                &(&QScalar::q_pow(dd * n * (n - 1) / 2) * &norm.pow(-n)) / &super_qfact(n as u32, dd, p);
            ensure(form(&d, &x, &x) == expected, || format!("divided power norm p={p} d={dd} n={n}"))?;
        }
    }
    Ok(())
}

// 3 ---------------------------------------------------------------------------

fn radical_suite() -> Outcome {
    let mut checked = [0usize; 3];
    for d in all_data() {
        let space = PlusSpace::new(d.clone());
        for rel in serre_type_relations(&d, 8).map_err(|e| e.to_string())? {
            let slot = match &rel.kind {
                RelationKind::Serre { .. } => 0,
                RelationKind::HigherSerre { m, c, .. } if *m <= 4 && c.iter().sum::<u32>() <= 2 => 1,
                RelationKind::HigherSerre { .. } => continue,
                RelationKind::Commutator { .. } => 2,
            };
            ensure(space.radical_membership(&rel.element).is_member(), || {
                format!("{} is not in the radical for {:?}", rel.label(&d), d.matrix())
            })?;
            checked[slot] += 1;
        }
    }
    ensure(checked.iter().all(|&c| c > 0), || format!("relations checked per family: {checked:?}"))
}

// 4 ---------------------------------------------------------------------------

fn words_of_weight(d: &CartanDatum, beta: &RootWeight) -> Vec<Word> {
    borcherds::freesuper::exdegrees_of_weight(d, beta).iter().flat_map(|e| e.words()).collect()
}

fn triangular_suite() -> Outcome {
    for d in [a1_odd(), a2(), borcherds_super(), odd_imaginary()] {
        let space = Arc::new(PlusSpace::new(d.clone()));
        let u = UAlgebra::new(space.clone());
        let rank = d.rank();
        let k0 = vec![0; rank];
        for beta in roots_up_to_height(rank, 4) {
            for nu in roots_up_to_height(rank, 4 - beta.height()) {
                let mons = u.bidegree_monomials(&beta, &nu, &k0);
                let expected = space.dim(&beta) * space.dim(&nu);
                ensure(mons.len() == expected && u.bidegree_count(&beta, &nu) == expected, || {
                    format!("monomial count at ({beta}, {nu})")
                })?;
                // a_v b_w straightened: its top component b_w a_v (up to sign) spans the bidegree
                let index: BTreeMap<&UMonomial, usize> = mons.iter().enumerate().map(|(k, m)| (m, k)).collect();
                let mut rows = Vec::new();
                for v in words_of_weight(&d, &nu) {
                    for bw in words_of_weight(&d, &beta) {
                        let mut a = UMonomial::one(rank);
                        a.plus = v.clone();
                        let mut b = UMonomial::one(rank);
                        b.minus = bw;
                        let p = u.mul_monomials(&a, &b).value;
                        let mut row = vec![QScalar::zero(); mons.len()];
                        for (m, c) in p.terms() {
                            if m.k == k0 && m.minus.weight(&d) == beta && m.plus.weight(&d) == nu {
                                row[index[m]] = c.clone();
                            }
                        }
                        rows.push(row);
                    }
                }
                if !mons.is_empty() {
                    let r = QMatrix::from_rows(rows).rank();
                    ensure(r == expected, || format!("leading terms at ({beta}, {nu}) have rank {r}, expected {expected}"))?;
                }
            }
        }
    }
    // associativity probes on random short monomials
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let data = [a2(), borcherds_super(), odd_imaginary()];
    let algebras: Vec<UAlgebra> = data.iter().map(|d| UAlgebra::new(Arc::new(PlusSpace::new(d.clone())))).collect();
    for probe in 0..200 {
        let u = &algebras[probe % algebras.len()];
        let d = u.datum();
        let letters: Vec<Letter> = (0..d.rank())
            .flat_map(|i| (1..=2u32).filter(move |&l| d.is_letter(i, l)).map(move |l| Letter::new(i, l)))
            .collect();
        // each factor has total height at most 2 across both halves
        let mut random = || {
            let mut m = UMonomial::one(d.rank());
            let mut budget = 2u32;
            while budget > 0 && rng.gen_bool(0.7) {
                let a = letters[rng.gen_range(0..letters.len())];
                if a.level > budget {
                    continue;
                }
                budget -= a.level;
                if rng.gen_bool(0.5) {
                    m.minus = m.minus.push(a);
                } else {
                    m.plus = m.plus.push(a);
                }
            }
            m.k = (0..d.rank()).map(|_| rng.gen_range(-1..=1)).collect();
            UElement::monomial(m, QScalar::one())
        };
        let (x, y, z) = (random(), random(), random());
        let left = u.mul(&u.mul(&x, &y).value, &z).value;
        let right = u.mul(&x, &u.mul(&y, &z).value).value;
        ensure(left == right, || format!("associativity probe {probe} fails on {:?}", d.matrix()))?;
    }
    Ok(())
}

// 5 ---------------------------------------------------------------------------

fn theta_suite() -> Outcome {
    let height = 4;
    for d in all_data() {
        let space = Arc::new(PlusSpace::new(d.clone()));
        let u = UAlgebra::new(space.clone());
        let theta = compute_theta(&space, height, ThetaSign::Parts);
        for (name, g) in generators(&u, height) {
            ensure(verify_intertwiner(&u, &theta, &g), || format!("{name} does not intertwine on {:?}", d.matrix()))?;
        }
        let inv = verify_inverse(&u, &theta).map_err(|e| e.to_string())?;
        ensure(inv, || format!("inverse identity fails on {:?}", d.matrix()))?;
        let bad = recursion_failures(&space, &theta);
        ensure(bad.is_empty(), || format!("coefficient recursions fail on {:?}: {bad:?}", d.matrix()))?;
    }
    Ok(())
}

// 6 ---------------------------------------------------------------------------

fn module_cases() -> Vec<(CartanDatum, Vec<i64>)> {
    vec![
        (a1_even(), vec![2]),
        (a1_odd(), vec![2]),
        (a2(), vec![1, 1]),
        (b2(), vec![1, 0]),
        (borcherds_super(), vec![2, 1]),
        (borcherds_super(), vec![2, 0]),
        (odd_imaginary(), vec![1, 1]),
        (odd_imaginary(), vec![1, 0]),
        (orthogonal(), vec![1, 1]),
    ]
}

fn slices(d: &CartanDatum, lambda: &[i64], depth: i64) -> (Arc<PlusSpace>, Arc<VermaSlice>, QuotientSlice) {
    let space = Arc::new(PlusSpace::new(d.clone()));
    let v = Arc::new(VermaSlice::build(space.clone(), w(lambda), depth).expect("slice"));
    let q = irreducible_quotient(v.clone());
    (space, v, q)
}

fn casimir_suite() -> Outcome {
    for (d, lambda) in module_cases() {
        let (space, v, q) = slices(&d, &lambda, 4);
        let u = UAlgebra::new(space);
        let cas = Casimir::new(&u, &q);
        let r = cas.check_commutation();
        ensure(r.is_ok(), || format!("{:?} {lambda:?}: {:?}", d.matrix(), r.violations))?;
        let r = cas.eigen_check();
        ensure(r.is_ok(), || format!("{:?} {lambda:?}: {:?}", d.matrix(), r.violations))?;
        let r = check_singular_casimir(&u, &v);
        ensure(r.is_ok(), || format!("{:?} {lambda:?}: {:?}", d.matrix(), r.violations))?;
        for beta in roots_up_to_height(d.rank(), 4) {
            for i in 0..d.rank() {
                for l in 1..=3i64 {
                    let mu = w(&lambda).minus_root(&beta);
                    let step = RootWeight::simple(d.rank(), i).scaled(l);
                    let lhs = relative_casimir_exponent(&d, &w(&lambda), &beta.plus_simple(i, l))
                        - relative_casimir_exponent(&d, &w(&lambda), &beta)
                        + 2 * d.form_weight_root(&mu, &step);
                    ensure(lhs == (l * l - l) * d.form_roots(i, i), || format!("exponent identity at {beta} ({i},{l})"))?;
                }
            }
        }
    }
    Ok(())
}

// 7 ---------------------------------------------------------------------------

fn module_suite() -> Outcome {
    for (d, lambda) in module_cases() {
        ensure(d.is_dominant(&w(&lambda)), || format!("{lambda:?} not dominant"))?;
        let (_, _, q) = slices(&d, &lambda, 5);
        let r = check_highest_weight_properties(&q);
        ensure(r.is_ok() && r.checked > 0, || format!("{:?} {lambda:?}: {:?}", d.matrix(), r.violations))?;
        let r = check_oint(&q);
        ensure(r.is_ok() && r.checked > 0, || format!("{:?} {lambda:?}: {:?}", d.matrix(), r.violations))?;
        for beta in q.offsets() {
            if beta.is_zero() || q.dim(beta) == 0 {
                continue;
            }
            ensure(q.singular_vectors(beta).is_empty(), || format!("singular vector in V({lambda:?}) at {beta}"))?;
        }
    }
    Ok(())
}

// 8 ---------------------------------------------------------------------------

fn brute(d: &CartanDatum, lambda: &[i64], depth: i64) -> CharacterSeries {
    let (_, _, q) = slices(d, lambda, depth);
    CharacterSeries::from_dims(w(lambda), depth, &brute_character(&q))
}

fn character_cases() -> Vec<(CartanDatum, Vec<i64>)> {
    let mut out: Vec<(CartanDatum, Vec<i64>)> = (0..4).map(|m| (a1_even(), vec![m])).collect();
    for lambda in [[0, 0], [1, 0], [0, 1], [1, 1], [2, 1]] {
        out.push((a2(), lambda.to_vec()));
        out.push((b2(), lambda.to_vec()));
    }
    // orthogonal to the isotropic root, then not
    for lambda in [[0, 0], [2, 0], [4, 0], [0, 1], [2, 1], [2, 2]] {
        out.push((borcherds_super(), lambda.to_vec()));
    }
    out
}

fn character_suite() -> Outcome {
    let depth = 5;
    for (d, lambda) in character_cases() {
        let f = formula_character(&d, &w(&lambda), depth, None).map_err(|e| e.to_string())?;
        let b = brute(&d, &lambda, depth);
        let dd = diff(&f, &b);
        ensure(dd.is_empty(), || format!("{:?} {lambda:?}: formula and module differ at {dd:?}", d.matrix()))?;
    }
    Ok(())
}

// 9 ---------------------------------------------------------------------------

fn stability_suite() -> Outcome {
    let cases = [(a2(), vec![1, 1]), (borcherds_super(), vec![2, 0]), (borcherds_super(), vec![2, 1])];
    for (d, lambda) in cases {
        let space = Arc::new(PlusSpace::new(d.clone()));
        for k in 2..=4i64 {
            let f_small = formula_character(&d, &w(&lambda), k, None).map_err(|e| e.to_string())?;
            let f_big = formula_character(&d, &w(&lambda), k + 1, None).map_err(|e| e.to_string())?;
            ensure(f_big.truncated(k) == f_small, || format!("formula not stable at depth {k}"))?;
            let b_small = brute(&d, &lambda, k);
            let b_big = brute(&d, &lambda, k + 1);
            ensure(b_big.truncated(k) == b_small, || format!("module character not stable at depth {k}"))?;
            let t_small = compute_theta(&space, k, ThetaSign::Parts);
            let t_big = compute_theta(&space, k + 1, ThetaSign::Parts);
            for (nu, b) in &t_small.blocks {
                ensure(t_big.block(nu) == Some(b), || format!("Θ block {} changed with the bound", nu.render(&d)))?;
            }
            ensure(
                t_big.blocks.keys().filter(|nu| nu.height() <= k).count() == t_small.blocks.len(),
                || format!("Θ gained low blocks at bound {}", k + 1),
            )?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Outcome); 9] = [
        ("super q-binomial identities", 5, qbinomial_suite),
        ("bilinear form symmetry and divided power norms", 60, bilinear_form_suite),
        ("Serre-type elements lie in the radical", 300, radical_suite),
        ("triangular decomposition and associativity", 120, triangular_suite),
        ("quasi-R-matrix intertwiner, inverse and recursions", 300, theta_suite),
        ("Casimir commutation, eigenvalues and exponent identity", 120, casimir_suite),
        ("highest weight module checks", 180, module_suite),
        ("character formula against module characters", 600, character_suite),
        ("stability under increasing depth", 300, stability_suite),
    ];
    let mut failed = 0;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let limit = Duration::from_secs(*limit);
        let verdict = match &outcome {
            Ok(()) if elapsed <= limit => "PASS".to_string(),
            Ok(()) => format!("FAIL (time limit {}s exceeded)", limit.as_secs()),
            Err(e) => format!("FAIL ({e})"),
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!("{verdict} [{}] {name} ({:.2}s, limit {}s)", k + 1, elapsed.as_secs_f64(), limit.as_secs());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
