//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the report is always printed.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use pointspace::algebra::GrowthClass;
use pointspace::genfun::{
    build_quiver, count_sequence, count_via_matrix, first_matrix_degree, presentation_gf,
};
use pointspace::io::parse_input;
use pointspace::moduli::{
    components, count_components, dim_profile, is_coherent, is_prolongable_seq, p1_report,
    verify_point_module, Config, PointModuleTrunc, SubsetSeq, Variant,
};
use pointspace::morphisms::{
    graded_aut_permutations, iso_monomial, iso_truncated, mon_graph, mon_graph_iso, Permutation,
};
use pointspace::poly::{bareiss_det, BAREISS_LIMIT};
use pointspace::radical::prolongable_radical;
use pointspace::words::factors;
use pointspace::{
    Alphabet, IntPoly, LetterSet, MonomialAlgebra, Presentation, RationalGF, Side, Word,
    WordGenerator,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn gf(num: &[i64], den: &[i64]) -> RationalGF {
    RationalGF::new(IntPoly::from_i64s(num), IntPoly::from_i64s(den))
}

fn random_presentation(rng: &mut StdRng, max_m: usize) -> Presentation {
    let m = rng.gen_range(2..=max_m);
    let d = rng.gen_range(2..=3);
    let k = rng.gen_range(1..=5);
    let words = (0..k).map(|_| {
        let len = rng.gen_range(2..=d);
        Word((0..len).map(|_| rng.gen_range(0..m) as u8).collect())
    });
    Presentation::new(Alphabet::numeric(m), words).unwrap()
}

fn big(n: usize) -> BigInt {
    BigInt::from(n)
}

// 1. Free algebras: one component in every degree, dimension (n+1)(m-1).
fn free_baseline() -> Outcome {
    let cfg = Config::default();
    for m in 2..=3usize {
        let p = Presentation::free(m);
        let a = MonomialAlgebra::from(p.clone());
        for n in 0..=6 {
            ensure(p.graded_dim(n) == BigInt::from(m).pow(n as u32), || format!("dim A_{n} for m={m}"))?;
            for variant in [Variant::Point, Variant::Truncated] {
                let c = components(&a, n, variant, &cfg).map_err(e)?;
                ensure(c.components.len() == 1, || format!("m={m} n={n}: {} components", c.components.len()))?;
                ensure(c.dimension == (n + 1) * (m - 1), || format!("m={m} n={n}: dimension {}", c.dimension))?;
            }
        }
        ensure(p.hilbert_series() == gf(&[1], &[1, -(m as i64)]), || format!("Hilbert series for m={m}"))?;
        for variant in [Variant::Point, Variant::Truncated] {
            let g = presentation_gf(&p, variant, &cfg).map_err(e)?;
            ensure(g == gf(&[1], &[1, -1]), || format!("m={m}: generating function {g}"))?;
        }
    }
    Ok("m = 2, 3: a_n = 1, dim (n+1)(m-1), H = 1/(1-mt), GF = 1/(1-t)".into())
}

// 2. <x, y | xy>: n + 1 components, all of dimension 1.
fn xy_algebra() -> Outcome {
    let cfg = Config::default();
    let p = Presentation::parse(&["x", "y"], &["xy"]).map_err(e)?;
    let a = MonomialAlgebra::from(p.clone());
    let min = first_matrix_degree(p.d());
    for variant in [Variant::Point, Variant::Truncated] {
        let q = build_quiver(&p, variant, &cfg).map_err(e)?;
        for n in 0..=10 {
            let c = components(&a, n, variant, &cfg).map_err(e)?;
            ensure(c.components.len() == n + 1, || format!("{variant:?} n={n}: {} components", c.components.len()))?;
            ensure(c.dimension == 1, || format!("{variant:?} n={n}: dimension {}", c.dimension))?;
            if n >= min {
                let via = count_via_matrix(&q, n).map_err(e)?;
                ensure(via == big(n + 1), || format!("{variant:?} n={n}: matrix gives {via}"))?;
            }
        }
        let g = presentation_gf(&p, variant, &cfg).map_err(e)?;
        ensure(g == gf(&[1], &[1, -2, 1]), || format!("{variant:?}: generating function {g}"))?;
    }
    ensure(p.hilbert_series() == gf(&[1], &[1, -2, 1]), || "Hilbert series".into())?;
    Ok("brute force = matrix for n <= 10, GF 1/(1-t)^2, H = 1/(1-t)^2, dim 1".into())
}

// 3. A coherent-maximal sequence that is not prolongable.
fn truncation_witness() -> Outcome {
    let cfg = Config::default();
    let p = Presentation::parse(&["x1", "x2", "x3", "x4"], &["x1x2", "x1x4", "x2x1", "x2x3"]).map_err(e)?;
    let a = MonomialAlgebra::from(p.clone());
    let x4 = LetterSet::singleton(3);
    let all = LetterSet::full(4);
    for n in 2..=4 {
        let mut rows = vec![x4; n];
        rows.push(all);
        let witness = SubsetSeq(rows);
        ensure(is_coherent(&a, &witness).map_err(e)?, || format!("n={n}: witness not coherent"))?;
        let pr = is_prolongable_seq(&a, &witness, &cfg).map_err(e)?;
        ensure(!pr.holds() && pr.exactness().is_exact(), || format!("n={n}: witness prolongable ({pr:?})"))?;

        let mut scalars = vec![vec![BigRational::zero(); 4]; n + 1];
        for row in scalars.iter_mut().take(n) {
            row[3] = BigRational::one();
        }
        scalars[n] = vec![BigRational::one(); 4];
        let v = verify_point_module(&a, &PointModuleTrunc { scalars }).map_err(e)?;
        ensure(v.holds, || format!("n={n}: witness module rejected"))?;

        let truncated = components(&a, n, Variant::Truncated, &cfg).map_err(e)?;
        let mut stuck = 0;
        for s in &truncated.components {
            if !is_prolongable_seq(&a, s, &cfg).map_err(e)?.holds() {
                stuck += 1;
            }
        }
        ensure(stuck > 0, || format!("n={n}: every maximal coherent sequence is prolongable"))?;
    }
    Ok("n = 2, 3, 4: ({x4}^n, all) coherent, not prolongable; stuck maximal components exist".into())
}

/// Coefficients of det(I - tA) annihilate `w_pre A^L w_post` for `L >= deg`.
fn char_poly_annihilates(succ: &[Vec<usize>], values: &[BigInt]) -> bool {
    let v = succ.len();
    let mut m = vec![vec![IntPoly::zero(); v]; v];
    for i in 0..v {
        m[i][i] = IntPoly::one();
        for &j in &succ[i] {
            m[i][j] = &m[i][j] - &IntPoly::from_i64s(&[0, 1]);
        }
    }
    let det = bareiss_det(m);
    let deg = det.degree().unwrap_or(0);
    (deg..values.len()).all(|l| {
        let s: BigInt = (0..=deg).map(|i| det.coeff(i) * &values[l - i]).sum();
        s.is_zero()
    })
}

fn walks(succ: &[Vec<usize>], pre: &[bool], post: &[bool], count: usize) -> Vec<BigInt> {
    pointspace::poly::walk_counts(succ, pre, post, count)
}

// 4. Matrix counts, characteristic recurrence and GF expansion on random presentations.
fn rationality() -> Outcome {
    let cfg = Config::default();
    let mut rng = StdRng::seed_from_u64(2024);
    let (mut samples, mut char_checked) = (0, 0);
    while samples < 50 {
        let raw = random_presentation(&mut rng, 3);
        let p = prolongable_radical(&raw, Side::Right).quotient;
        let a = MonomialAlgebra::from(p.clone());
        let min = first_matrix_degree(p.d());
        for variant in [Variant::Point, Variant::Truncated] {
            let q = build_quiver(&p, variant, &cfg).map_err(e)?;
            let mut brute = Vec::new();
            for n in 0..=10 {
                let c = count_components(&a, n, variant, &cfg).map_err(e)?.count;
                brute.push(big(c));
                if n >= min {
                    let via = count_via_matrix(&q, n).map_err(e)?;
                    ensure(via == big(c), || format!("{p:?} {variant:?} n={n}: matrix {via} vs brute {c}"))?;
                }
            }
            let t = q.trimmed();
            if t.len() <= BAREISS_LIMIT {
                let seq = walks(&t.succ, &t.w_pre, &t.w_post, 40);
                ensure(char_poly_annihilates(&t.succ, &seq), || {
                    format!("{p:?} {variant:?}: det(I - tA) does not annihilate the walk counts")
                })?;
                char_checked += 1;
            }
            let g = presentation_gf(&p, variant, &cfg).map_err(e)?;
            ensure(g.expand(11) == brute, || format!("{p:?} {variant:?}: GF {g} expands wrongly"))?;
            let long = count_sequence(&p, variant, 30, &cfg).map_err(e)?;
            ensure(g.expand(31) == long.values, || format!("{p:?} {variant:?}: GF disagrees up to 30"))?;
        }
        samples += 1;
    }
    Ok(format!("{samples} presentations x 2 variants; det(I - tA) checked on {char_checked} quivers"))
}

// 5. Prolongable radical of <x, y | xx, xy>.
fn radical() -> Outcome {
    let p = Presentation::parse(&["x", "y"], &["xx", "xy"]).map_err(e)?;
    let r = prolongable_radical(&p, Side::Right);
    ensure(r.generators == vec![Word(vec![0])], || format!("generators {:?}", r.generators))?;
    let fy = Presentation::free(1);
    ensure(iso_monomial(&r.quotient, &fy).map_err(e)?.is_some(), || "quotient is not F[y]".into())?;
    let r2 = prolongable_radical(&r.quotient, Side::Right);
    ensure(r2.generators.is_empty() && r2.is_prolongable_input, || "second radical is non-zero".into())?;

    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..200 {
        let p = random_presentation(&mut rng, 3);
        for side in [Side::Left, Side::Right] {
            let r = prolongable_radical(&p, side);
            ensure(r.generators.iter().all(|u| u.0.len() <= p.d().max(1)), || {
                format!("{p:?} {side:?}: generator longer than d")
            })?;
            let again = prolongable_radical(&r.quotient, side);
            ensure(again.generators.is_empty(), || format!("{p:?} {side:?}: radical not idempotent"))?;
        }
    }
    Ok("rad = (x), A/rad = F[y], rad(A/rad) = 0; |u| <= d on 200 samples".into())
}

// 6. Sturmian words: one projective line plus n isolated points.
fn sturmian() -> Outcome {
    let cfg = Config::default();
    let mut rng = StdRng::seed_from_u64(6);
    let mut gens = vec![("fibonacci".to_string(), WordGenerator::fibonacci())];
    for _ in 0..5 {
        let cf: Vec<u32> = (0..8).map(|_| rng.gen_range(1..=3)).collect();
        gens.push((format!("cf {cf:?}"), WordGenerator::Sturmian { cf, periodic: true }));
    }
    for (name, g) in &gens {
        for n in 1..=8 {
            let r = p1_report(g, n, &cfg, 16).map_err(e)?;
            ensure(r.complexity.iter().enumerate().all(|(k, &p)| p == k + 1), || format!("{name}: complexity"))?;
            ensure(r.count == n + 1, || format!("{name} n={n}: {} components", r.count))?;
            ensure(r.dimension == 1, || format!("{name} n={n}: dimension {}", r.dimension))?;
            ensure(r.matches_shape(), || format!("{name} n={n}: shape {r:?}"))?;
        }
    }
    Ok(format!("{} words, n <= 8: p(k) = k+1, a_n = n+1, P^1 plus points, dim 1", gens.len()))
}

fn has_short_cube(w: &[u8], max_len: usize) -> bool {
    (1..=max_len / 3).any(|l| {
        (0..w.len().saturating_sub(3 * l - 1)).any(|i| w[i..i + l] == w[i + l..i + 2 * l] && w[i..i + l] == w[i + 2 * l..i + 3 * l])
    })
}

// 7. Thue-Morse.
fn thue_morse() -> Outcome {
    let cfg = Config::default();
    let tm = WordGenerator::thue_morse();
    let prefix = tm.prefix(1024).map_err(e)?;
    ensure(prefix.0[..8] == [0, 1, 1, 0, 1, 0, 0, 1], || "prefix".into())?;
    ensure(!has_short_cube(&prefix.0, 24), || "cube found".into())?;
    let f = factors(&tm, 24, 16).map_err(e)?;
    ensure(!f.balance(1).balanced && f.balance(2).balanced, || "balance".into())?;
    let a = MonomialAlgebra::from_factors(factors(&tm, 24, 16).map_err(e)?);
    let prof = dim_profile(&a, 8, &cfg).map_err(e)?;
    ensure((5..=8).all(|n| prof.dims[n] == 1), || format!("dims {:?}", prof.dims))?;

    let left = parse_input(r#"{"generator":{"type":"substitution","rules":{"0":"01","1":"10"},"seed":"0","coding":{"alphabet":["x","w","z"],"images":{"0":"xww","1":"xzz"}}}}"#).map_err(e)?;
    let right = parse_input(r#"{"generator":{"type":"substitution","rules":{"0":"01","1":"10"},"seed":"0","coding":{"alphabet":["x","w","z"],"images":{"0":"xwz","1":"xzz"}}}}"#).map_err(e)?;
    let la = left.source().map_err(e)?.algebra(6, 16).map_err(e)?;
    let ra = right.source().map_err(e)?.algebra(6, 16).map_err(e)?;
    let iso = iso_truncated(&la, &ra, 6).map_err(e)?;
    ensure(!iso.isomorphic() && iso.refuted_at.is_some_and(|k| k <= 6), || format!("coded pair: {iso:?}"))?;

    let aut = graded_aut_permutations(&a, 6).map_err(e)?;
    let expected = vec![Permutation::identity(2), Permutation { images: vec![1, 0] }];
    let mut got = aut.elements.clone();
    got.sort();
    ensure(got == expected, || format!("aut {got:?}"))?;
    Ok("prefix 01101001, 2- not 1-balanced, cube-free to 24, dim 1 for n = 5..8, coded pair refuted, Aut = {id, swap}".into())
}

/// Does every relation give a zero product at every position?
fn module_oracle(p: &Presentation, scalars: &[Vec<BigRational>]) -> bool {
    let rows = scalars.len();
    p.forbidden().iter().all(|u| {
        let k = u.0.len();
        (0..=rows.saturating_sub(k)).filter(|&i| i + k <= rows).all(|i| {
            u.0.iter().enumerate().map(|(j, &x)| scalars[i + j][x as usize].clone()).product::<BigRational>().is_zero()
        })
    })
}

// 8. Point-module classification on random modules.
fn classification() -> Outcome {
    let mut rng = StdRng::seed_from_u64(8);
    let (mut total, mut valid) = (0, 0);
    for _ in 0..10 {
        let p = random_presentation(&mut rng, 3);
        let a = MonomialAlgebra::from(p.clone());
        let m = p.m();
        for _ in 0..50 {
            let rows = rng.gen_range(1..=6);
            let density = rng.gen_range(0.2..0.8);
            let scalars: Vec<Vec<BigRational>> = (0..rows)
                .map(|_| {
                    let mut row: Vec<BigRational> = (0..m)
                        .map(|_| {
                            if rng.gen_bool(density) {
                                BigRational::new(rng.gen_range(-3..=3i64).max(1).into(), rng.gen_range(1..=3i64).into())
                            } else {
                                BigRational::zero()
                            }
                        })
                        .collect();
                    if row.iter().all(Zero::is_zero) {
                        row[rng.gen_range(0..m)] = BigRational::one();
                    }
                    row
                })
                .collect();
            let module = PointModuleTrunc { scalars: scalars.clone() };
            let v = verify_point_module(&a, &module).map_err(e)?;
            let oracle = module_oracle(&p, &scalars);
            let coherent = is_coherent(&a, &module.support()).map_err(e)?;
            ensure(v.holds == oracle && oracle == coherent, || format!("{p:?} {scalars:?}: verify {} oracle {oracle} coherent {coherent}", v.holds))?;
            total += 1;
            valid += usize::from(oracle);
        }
    }
    ensure(valid > 0 && valid < total, || format!("degenerate sample: {valid}/{total} valid"))?;
    Ok(format!("{total} modules over 10 algebras ({valid} valid): verify <=> coherent support"))
}

// 9. Left and right prolongable quotients grow alike.
fn growth_symmetry() -> Outcome {
    let mut rng = StdRng::seed_from_u64(9);
    let mut linear = 0;
    for _ in 0..300 {
        let p = random_presentation(&mut rng, 3);
        let l = prolongable_radical(&p, Side::Left).quotient.growth_class().class;
        let r = prolongable_radical(&p, Side::Right).quotient.growth_class().class;
        ensure((l == GrowthClass::Linear) == (r == GrowthClass::Linear), || format!("{p:?}: left {l:?}, right {r:?}"))?;
        linear += usize::from(l == GrowthClass::Linear);
    }
    Ok(format!("300 presentations ({linear} linear): left linear <=> right linear"))
}

// 10. Mon graphs.
fn mon_graphs() -> Outcome {
    let fib = MonomialAlgebra::from_factors(factors(&WordGenerator::fibonacci(), 8, 16).map_err(e)?);
    let g = mon_graph(&fib, 4).map_err(e)?;
    ensure(g.layer_sizes() == vec![1, 2, 3, 4, 5], || format!("layers {:?}", g.layer_sizes()))?;
    let split: Vec<usize> = g.splitting().iter().map(Vec::len).collect();
    ensure(split[..4] == [1, 1, 1, 1], || format!("splitting {split:?}"))?;

    let a = Presentation::parse(&["x", "y", "z"], &["xx", "yy", "zz"]).map_err(e)?;
    let b = Presentation::parse(&["x", "y", "z"], &["xz", "yz", "zz"]).map_err(e)?;
    let ga = mon_graph(&MonomialAlgebra::from(a.clone()), 4).map_err(e)?;
    let gb = mon_graph(&MonomialAlgebra::from(b.clone()), 4).map_err(e)?;
    ensure(mon_graph_iso(&ga, &gb).map_err(e)?, || "counterexample graphs differ".into())?;
    ensure(iso_monomial(&a, &b).map_err(e)?.is_none(), || "counterexample algebras isomorphic".into())?;
    Ok("Fibonacci layers 1..5 with one split each; <xx,yy,zz> vs <xz,yz,zz>: graphs iso, algebras not".into())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("free baseline", free_baseline),
        ("x, y | xy", xy_algebra),
        ("truncation witness", truncation_witness),
        ("rationality", rationality),
        ("prolongable radical", radical),
        ("sturmian", sturmian),
        ("thue-morse", thue_morse),
        ("classification", classification),
        ("growth symmetry", growth_symmetry),
        ("mon graphs", mon_graphs),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {:>2} [{name}]: PASS  {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} [{name}]: FAIL  {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
