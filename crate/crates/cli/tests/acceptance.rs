//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. All comparisons are exact.

use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ihl_core::complexes::{disjoint_relabel, poly_mul, poset_product, Ear, EarDecomposition, SphereFactor};
use ihl_core::corpus::{complex_corpus, matroid_corpus, product_factors, random_monomial_set};
use ihl_core::linalg::smith_invariants;
use ihl_core::macaulay::{check_flatness, check_g_inequalities, pseudopower};
use ihl_core::oracles::{divisor_counts, lex_segment_growth};
use ihl_core::oseq::{check_ihl, find_pure_o_realization, monomials_of_degree, order_ideal, pure_o_sequence};
use ihl_core::sr::{quotient_dims, random_lsop, sr_ihl_check, Verdict};
use ihl_core::{build_complex, gale_dual, verify_ps_decomposition, IntegerMatrix, MonomialSet, SimplicialComplex};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))
}

fn u24() -> SimplicialComplex {
    build_complex(vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4], vec![3, 4]]).unwrap()
}

fn first_valid_dims(s: &SimplicialComplex, seed: u64) -> Option<Vec<i64>> {
    (0..16).find_map(|i| {
        let r = quotient_dims(s, &random_lsop(s, seed.wrapping_add(i)).ok()?).ok()?;
        r.valid_lsop.then(|| r.dims[..=s.rank()].iter().map(|&d| d as i64).collect())
    })
}

fn convention_pin() -> Check {
    let start = Instant::now();
    let s = u24();
    let fv = s.face_vectors();
    let mut reversed = fv.h_reversed_formula.clone();
    reversed.reverse();
    let quotient = first_valid_dims(&s, 0).ok_or("no valid l.s.o.p.")?;
    let want = vec![1, 2, 3];
    ensure(fv.h == want, || format!("Hilbert identity gave {:?}", fv.h))?;
    ensure(reversed == want, || format!("reversed printed formula gave {reversed:?}"))?;
    ensure(quotient == want, || format!("quotient dims {quotient:?}"))?;
    within(Duration::from_secs(1), start)?;
    Ok("h(U_{2,4}) = (1,2,3) three ways".into())
}

fn printed_formula_reversal() -> Check {
    let corpus = complex_corpus();
    ensure(corpus.len() >= 30, || format!("corpus has only {} complexes", corpus.len()))?;
    for (name, s) in &corpus {
        let fv = s.face_vectors();
        let mut h = fv.h.clone();
        h.reverse();
        ensure(fv.h_reversed_formula == h, || format!("{name}: {:?} vs {:?}", fv.h_reversed_formula, fv.h))?;
    }
    Ok(format!("{} complexes", corpus.len()))
}

fn coloop_free_matroids() -> Check {
    let start = Instant::now();
    let mut count = 0;
    let mut max_resamples = 0;
    for m in matroid_corpus().into_iter().filter(|m| m.matroid.coloops().coloop_free) {
        let s = m.matroid.independence_complex();
        let h = s.face_vectors().h;
        ensure(check_flatness(&h).passed, || format!("{}: flatness fails for {h:?}", m.name))?;
        let g = check_g_inequalities(&h).map_err(|e| e.to_string())?;
        ensure(g.passed, || format!("{}: g-inequalities fail for {h:?}", m.name))?;
        let r = sr_ihl_check(&s, 0, 3).map_err(|e| format!("{}: {e}", m.name))?;
        ensure(r.verdict == Some(Verdict::Certified), || format!("{}: {:?}", m.name, r.verdict))?;
        ensure(r.matches_h, || format!("{}: dims {:?} vs h {h:?}", m.name, r.dims))?;
        max_resamples = max_resamples.max(r.resamples_used);
        count += 1;
    }
    within(Duration::from_secs(60), start)?;
    Ok(format!("{count} matroids, at most {max_resamples} resamples, {:?}", start.elapsed()))
}

fn pure_o_sequence_passes(ms: &MonomialSet) -> Result<(), String> {
    let p = pure_o_sequence(ms);
    ensure(p.h == divisor_counts(ms), || format!("{ms:?}: order ideal mismatch"))?;
    let h: Vec<i64> = p.h.iter().map(|&v| v as i64).collect();
    ensure(check_flatness(&h).passed, || format!("{ms:?}: flatness fails for {h:?}"))?;
    let g = check_g_inequalities(&h).map_err(|e| e.to_string())?;
    ensure(g.passed, || format!("{ms:?}: g-inequalities fail for {h:?}"))?;
    ensure(check_ihl(&order_ideal(ms)).all_injective(), || format!("{ms:?}: Lefschetz map not injective"))
}

fn pure_o_sequences() -> Check {
    let start = Instant::now();
    let mut exhaustive = 0;
    for vars in 1..=3 {
        for k in 1..=4 {
            let all = monomials_of_degree(vars, k);
            for mask in 1u64..1 << all.len() {
                let gens = (0..all.len()).filter(|&i| mask >> i & 1 == 1).map(|i| all[i].clone()).collect();
                pure_o_sequence_passes(&MonomialSet::new(vars, k, gens).unwrap())?;
                exhaustive += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        pure_o_sequence_passes(&random_monomial_set(&mut rng, 5, 6, 8))?;
    }
    within(Duration::from_secs(300), start)?;
    Ok(format!("{exhaustive} exhaustive + 200 random sets, {:?}", start.elapsed()))
}

fn macaulay_oracle() -> Check {
    let start = Instant::now();
    for i in 1..=5u32 {
        for a in 1..=30u64 {
            let fast = pseudopower(a, i);
            let slow = lex_segment_growth(a as usize, i as usize) as u128;
            ensure(fast == slow, || format!("a={a} i={i}: {fast} vs lex segment {slow}"))?;
        }
    }
    within(Duration::from_secs(10), start)?;
    Ok(format!("150 pairs, {:?}", start.elapsed()))
}

fn product_multiplicativity() -> Check {
    let factors = product_factors();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for trial in 0..50 {
        let (na, a) = &factors[rng.random_range(0..factors.len())];
        let (nb, b) = &factors[rng.random_range(0..factors.len())];
        let b = disjoint_relabel(a, b);
        let p = poset_product(a, &b).map_err(|e| e.to_string())?;
        let (ha, hb, hp) = (a.face_vectors().h, b.face_vectors().h, p.face_vectors().h);
        ensure(hp == poly_mul(&ha, &hb), || format!("{na} x {nb}: h {hp:?}"))?;
        let seed = 1000 * trial;
        let da = first_valid_dims(a, seed).ok_or("no l.s.o.p.")?;
        let db = first_valid_dims(&b, seed + 100).ok_or("no l.s.o.p.")?;
        let dp = first_valid_dims(&p, seed + 200).ok_or("no l.s.o.p.")?;
        ensure(dp == poly_mul(&da, &db), || format!("{na} x {nb}: dims {dp:?} vs {da:?} * {db:?}"))?;
    }
    Ok("50 pairs".into())
}

fn random_gale_input(rng: &mut ChaCha8Rng) -> IntegerMatrix {
    let d = rng.random_range(1..=4);
    let extra = rng.random_range(1..=4);
    let mut rows: Vec<Vec<i64>> = (0..d)
        .map(|r| (0..d).map(|c| i64::from(r == c)).chain((0..extra).map(|_| rng.random_range(-5..=5))).collect())
        .collect();
    // random unimodular U as a product of elementary row operations
    for _ in 0..3 * d {
        let (i, j) = (rng.random_range(0..d), rng.random_range(0..d));
        if i == j {
            continue;
        }
        let f = rng.random_range(-3..=3);
        let src = rows[j].clone();
        for (x, y) in rows[i].iter_mut().zip(src) {
            *x += f * y;
        }
    }
    if rng.random_bool(0.5) && d > 1 {
        rows.swap(0, d - 1);
    }
    IntegerMatrix::from_i64_rows(&rows).unwrap()
}

fn gale_exactness() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..100 {
        let a = random_gale_input(&mut rng);
        let b = gale_dual(&a).map_err(|e| format!("trial {trial}: {e}"))?;
        ensure(a.mul(&b).unwrap().is_zero(), || format!("trial {trial}: AB != 0"))?;
        ensure(b.rank() == a.cols() - a.rows(), || format!("trial {trial}: rank B = {}", b.rank()))?;
        let inv = smith_invariants(&b);
        ensure(inv.len() == b.cols() && inv.iter().all(|v| *v == 1.into()), || {
            format!("trial {trial}: Smith invariants {inv:?}")
        })?;
    }
    within(Duration::from_secs(30), start)?;
    Ok(format!("100 matrices, {:?}", start.elapsed()))
}

fn ps_decomposition() -> Check {
    let sphere = |v: &[u32]| SphereFactor { vertices: v.to_vec() };
    let good = EarDecomposition {
        ears: vec![
            Ear::Sphere(vec![sphere(&[1, 2, 3])]),
            Ear::Ball { simplex: vec![4], sphere: vec![sphere(&[1, 2])] },
            Ear::Ball { simplex: vec![3, 4], sphere: vec![] },
        ],
    };
    let r = verify_ps_decomposition(&u24(), &good).map_err(|e| e.to_string())?;
    ensure(r.passed, || format!("valid decomposition rejected: {:?}", r.violation))?;
    let broken = EarDecomposition {
        ears: vec![
            Ear::Sphere(vec![sphere(&[1, 2, 3])]),
            Ear::Ball { simplex: vec![3], sphere: vec![sphere(&[1, 4])] },
        ],
    };
    let r = verify_ps_decomposition(&u24(), &broken).map_err(|e| e.to_string())?;
    let v = r.violation.ok_or("broken decomposition accepted")?;
    ensure(v.witness == vec![1, 3], || format!("witness {:?}", v.witness))?;
    Ok("valid passes, broken fails at {1,3}".into())
}

fn realization() -> Check {
    let mut found = Vec::new();
    for h in [&[1, 2, 2][..], &[1, 3, 3, 1]] {
        let r = find_pure_o_realization(h, 5).map_err(|e| e.to_string())?;
        let w = r.witness.ok_or_else(|| format!("{h:?}: no witness"))?;
        let got: Vec<i64> = divisor_counts(&w).iter().map(|&v| v as i64).collect();
        ensure(got == h, || format!("{h:?}: witness realizes {got:?}"))?;
        found.push(format!("{h:?}"));
    }
    let r = find_pure_o_realization(&[1, 2, 4], 5).map_err(|e| e.to_string())?;
    ensure(r.witness.is_none(), || "(1,2,4) realized".into())?;
    Ok(format!("{} found; (1,2,4) none, search space {}", found.join(" "), r.search_space))
}

fn cli_determinism() -> Check {
    let data = |n: &str| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(n).display().to_string();
    let runs: Vec<Vec<String>> = vec![
        vec!["analyze-matroid".into(), "--matrix".into(), data("u24.tsv"), "--seed".into(), "3".into()],
        vec!["analyze-matroid".into(), "--bases".into(), data("u22_bases.txt"), "--n".into(), "4".into()],
        vec!["face-vectors".into(), "--facets".into(), data("u24.facets")],
        vec!["check-h".into(), "--h".into(), "1,1,2".into()],
        vec!["oseq".into(), "--monomials".into(), data("chain.mon"), "--check-ihl".into()],
        vec!["oseq-realize".into(), "--h".into(), "1,3,3,1".into()],
        vec!["sr-ihl".into(), "--facets".into(), data("tetra_boundary.facets"), "--seed".into(), "11".into()],
        vec!["gale".into(), "--matrix".into(), data("coprime.tsv")],
        vec!["ps-verify".into(), "--facets".into(), data("u24.facets"), "--ears".into(), data("u24_broken.ears")],
    ];
    for args in &runs {
        let once = Command::new(env!("CARGO_BIN_EXE_ihl")).args(args).output().map_err(|e| e.to_string())?;
        let twice = Command::new(env!("CARGO_BIN_EXE_ihl")).args(args).output().map_err(|e| e.to_string())?;
        ensure(!once.stdout.is_empty(), || format!("{}: no output", args[0]))?;
        ensure(once.stdout == twice.stdout, || format!("{}: output differs between runs", args[0]))?;
    }
    Ok(format!("{} commands byte-identical", runs.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("convention pin", convention_pin),
        ("printed h formula is the reversal", printed_formula_reversal),
        ("coloop-free matroids: flatness, g, sr-IHL", coloop_free_matroids),
        ("pure O-sequences: flatness, g, IHL", pure_o_sequences),
        ("pseudopower equals lex-segment growth", macaulay_oracle),
        ("poset products multiply", product_multiplicativity),
        ("Gale duals are exact", gale_exactness),
        ("PS-ear-decomposition verification", ps_decomposition),
        ("pure O-sequence realization search", realization),
        ("CLI determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
