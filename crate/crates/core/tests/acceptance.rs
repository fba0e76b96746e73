//! Acceptance suite: one line per criterion, then a single assertion that
//! all of them passed. Run with `cargo test -p noflab --test acceptance -- --nocapture`.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use noflab::bounds::*;
use noflab::protocols::*;
use noflab::rs::*;
use noflab::search::*;
use noflab::*;

fn xor(bits: u32) -> GraphFunctionTable {
    AbelianGroup::binary(bits).unwrap().table(3).unwrap()
}

fn exactly_n_correctness() {
    let start = Instant::now();
    for n in 1..=256u64 {
        let bases: BTreeSet<u64> = [2, 4, choose_base(n)].into_iter().collect();
        for m in bases {
            let p = exactly_n_protocol(n, m).unwrap();
            let r = p.fast_sweep().unwrap();
            assert_eq!(r.inputs, n * n * n);
            assert!(r.all_correct(), "n = {n}, m = {m}: wrong on {:?}", r.counterexample);
        }
    }
    assert!(start.elapsed() < Duration::from_secs(60), "took {:?}", start.elapsed());
}

fn exactly_n_cost_scaling() {
    let exps = [4u32, 9, 16, 25];
    let xs: Vec<f64> = exps.iter().map(|&e| (e as f64).sqrt()).collect();
    let ys: Vec<f64> = exps
        .iter()
        .map(|&e| {
            let n = 1u64 << e;
            exactly_n_protocol(n, choose_base(n)).unwrap().analytic_cost() as f64
        })
        .collect();
    // The closed form is the longest real transcript: check it at a small n.
    let small = exactly_n_protocol(16, choose_base(16)).unwrap();
    assert_eq!(small.fast_sweep().unwrap().max_bits, small.analytic_cost());

    let k = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / k, ys.iter().sum::<f64>() / k);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let c = sxy / sxx;
    let c0 = my - c * mx;
    for (x, y) in xs.iter().zip(&ys) {
        assert!(y - (c * x + c0) <= 4.0, "cost {y} exceeds the fit {c} x + {c0} at x = {x} by more than 4");
    }
}

fn vector_protocol() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (m, d) in [(2u64, 1usize), (3, 2), (4, 2)] {
        for _ in 0..5 {
            let target: Vec<i64> = (0..d).map(|_| rng.gen_range(0..=3 * (m as i64 - 1))).collect();
            let p = ExactTVector::standard(m, d, target.clone()).unwrap();
            let r = sweep(&p, |x| p.oracle(x)).unwrap();
            assert!(r.all_correct(), "m = {m}, d = {d}, T = {target:?}: {:?}", r.counterexample);
            let domain = m.pow(d as u32);
            let mut max_value = 0;
            for input in all_inputs(&[domain; 3]) {
                for v in p.estimates(&input) {
                    max_value = max_value.max(p.form().value(&v));
                }
            }
            assert!(r.max_bits <= bit_width(max_value) + 2, "cost {} over the norm bound", r.max_bits);
        }
    }
    for _ in 0..100_000 {
        let m = rng.gen_range(2..=6u64);
        let d = rng.gen_range(1..=4usize);
        let target: Vec<i64> = (0..d).map(|_| rng.gen_range(-20..=20)).collect();
        let p = ExactTVector::standard(m, d, target).unwrap();
        let input: Vec<u64> = (0..3).map(|_| rng.gen_range(0..m.pow(d as u32))).collect();
        let [vx, vy, vz] = p.estimates(&input);
        for i in 0..d {
            assert_eq!(vx[i] + vz[i], 2 * vy[i]);
        }
    }
}

fn exact_small_extremals() {
    let start = Instant::now();
    let a = alpha_exact(&xor(2), DEFAULT_BUDGET).unwrap();
    assert_eq!((a.value, a.exhaustive), (8, true), "an exhaustive 8 rules out a 9-point set");
    let b = alpha_bar_exact(3, 4, 4, DEFAULT_BUDGET).unwrap();
    assert_eq!((b.value, b.exhaustive), (9, true));
    assert!(start.elapsed() < Duration::from_secs(60), "took {:?}", start.elapsed());
}

fn tensor_law() {
    let t = tensor_power(&z2_square_base_set(), 2).unwrap();
    assert_eq!(t.len(), 64);
    assert_eq!(t.len(), 1 << (3 * 4 / 2));
    assert!(find_stars(&t).is_empty());
    let f = xor(4);
    assert!(t.iter().all(|p| f.accepts(p)));
}

/// Seeds used for the cover pipeline: group, star-free seed set.
fn cover_seeds() -> Vec<(AbelianGroup, PointSet)> {
    vec![
        (AbelianGroup::binary(2).unwrap(), z2_square_base_set()),
        (AbelianGroup::binary(4).unwrap(), tensor_power(&z2_square_base_set(), 2).unwrap()),
        (AbelianGroup::cyclic(16).unwrap(), cfl_seed_class(16).unwrap()),
    ]
}

fn cover_pipeline() {
    for (g, s) in cover_seeds() {
        let f = g.table(3).unwrap();
        let bound = chi_upper_from_alpha(&g, 3, s.len()).unwrap().bound();
        for seed in 0..20 {
            let tc = translate_cover(&s, &g, 3, seed).unwrap();
            tc.cover.validate(&f).unwrap();
            assert!(tc.cover.len() <= bound, "{g}: {} classes, bound {bound}", tc.cover.len());
            let p = compile_cover_protocol(&f, &tc.cover).unwrap();
            let r = sweep(&p, |x| p.oracle(x)).unwrap();
            assert!(r.all_correct(), "{g} seed {seed}: {:?}", r.counterexample);
            assert_eq!(r.max_bits, ceil_log2(tc.cover.len() as u64) + 2);
        }
    }
}

fn chi_d_consistency() {
    for f in [xor(1), xor(2)] {
        let chi = chi_exact(&f, DEFAULT_BUDGET).unwrap();
        assert!(chi.exhaustive);
        let alpha = alpha_exact(&f, DEFAULT_BUDGET).unwrap();
        assert!(alpha.exhaustive);
        let ones = f.accepted_points().len();
        assert!(ones.div_ceil(alpha.value) <= chi.value);
        let p = compile_cover_protocol(&f, &chi.coloring.to_cover()).unwrap();
        assert_eq!(p.cost_bound(), Some(ceil_log2(chi.value as u64) + 2));
        let classes = transcript_partition(&p, f.dims()).unwrap();
        for c in &classes {
            assert!(is_cylinder_intersection(&c.points));
            assert!(c.points.iter().all(|q| f.accepts(q) == c.output));
        }
        assert!(classes.iter().filter(|c| c.output).count() >= chi.value);
    }
}

/// Every exhaustive witness at n <= 4.
fn exhaustive_witnesses() -> Vec<PointSet> {
    let mut out = Vec::new();
    for f in [xor(1), xor(2)] {
        let r = alpha_exact(&f, DEFAULT_BUDGET).unwrap();
        assert!(r.exhaustive);
        out.push(r.witness);
    }
    for n in 1..=4 {
        for range in 1..=4 {
            let r = alpha_bar_exact(3, n, range, DEFAULT_BUDGET).unwrap();
            assert!(r.exhaustive);
            out.push(r.witness);
        }
    }
    out
}

fn conversions() {
    for s in exhaustive_witnesses() {
        let m = starfree_to_matchings(&s).unwrap();
        assert_eq!(m.edge_count(), s.len());
        let back = matchings_to_starfree(&m).unwrap();
        assert_eq!(back.len(), s.len());
        assert!(is_star_free(&back));
        // Same cells; values relabeled by class index.
        let cells = |p: &PointSet| p.iter().map(|q| q.cell().to_vec()).collect::<BTreeSet<_>>();
        assert_eq!(cells(&back), cells(&s));

        let t = triangles_of(&s);
        assert_eq!(t.len(), s.len());
        assert!(g_stars(&t).is_empty());
        let d = s.dims();
        assert_eq!(points_of(&t, d.n, d.range).unwrap(), s);
        assert!(channel_schedule(&[m]).is_ok());
    }
    // Partitions: translate covers and exact colorings.
    let mut partitions: Vec<Cover> = Vec::new();
    for (g, s) in cover_seeds() {
        for seed in 0..20 {
            partitions.push(translate_cover(&s, &g, 3, seed).unwrap().cover);
        }
    }
    for f in [xor(1), xor(2)] {
        partitions.push(chi_exact(&f, DEFAULT_BUDGET).unwrap().coloring.to_cover());
    }
    let tc8 = translate_cover(&cfl_seed_class(8).unwrap(), &AbelianGroup::cyclic(8).unwrap(), 3, 0).unwrap();
    partitions.push(tc8.cover);
    for cover in partitions {
        let families: Vec<MatchingFamily> = cover.classes.iter().map(|c| starfree_to_matchings(c).unwrap()).collect();
        let schedule = channel_schedule(&families).unwrap();
        let rounds: Vec<usize> = families.iter().map(|f| f.matchings.len()).collect();
        assert_eq!(schedule.rounds, rounds);
    }
}

fn psi_and_xfree() {
    for v in 0..16u32 {
        let a = vec![v & 1, v >> 1 & 1];
        let b = vec![v >> 2 & 1, v >> 3 & 1];
        let w = psi_map(&a, &b).unwrap();
        assert_eq!(psi_inverse(&w).unwrap(), (a, b));
    }
    let x = xpattern_catalog("theorem19", None).unwrap();
    let displayed: BTreeSet<Vec<u32>> = [(0, 0), (0, 1), (1, 0), (1, 1)]
        .iter()
        .map(|&(a, b)| psi_star_image(a, b, 1).to_vec())
        .collect();
    let expected: BTreeSet<Vec<u32>> = [[0, 1, 2], [1, 0, 3], [2, 3, 0], [3, 2, 1]].iter().map(|t| t.to_vec()).collect();
    assert_eq!(displayed, expected);
    assert!(displayed.iter().all(|t| x.contains(t)));
    let r = xfree_max(&x, 2, DEFAULT_BUDGET).unwrap();
    assert!(r.exhaustive);
    assert_eq!(r.value, 8);
    assert_eq!(r.value, alpha_exact(&xor(2), DEFAULT_BUDGET).unwrap().value);
}

fn extraction_engine() {
    let mut runs: Vec<(GraphFunctionTable, Coloring)> = Vec::new();
    for f in [xor(1), xor(2)] {
        let c = chi_exact(&f, DEFAULT_BUDGET).unwrap().coloring;
        runs.push((f, c));
    }
    for (g, s) in cover_seeds() {
        let f = g.table(3).unwrap();
        for seed in 0..20 {
            let c = Coloring::from_cover(&translate_cover(&s, &g, 3, seed).unwrap().cover).unwrap();
            runs.push((f.clone(), c));
        }
    }
    for (f, c) in &runs {
        let t = lemma37_extract(f, c).unwrap();
        assert!(t.levels.len() <= c.len() + 1);
    }

    for n in 1..=10u64 {
        for range in n..n + 10 {
            for l in 1..=10u32 {
                let e = (1u32 << (l + 1)) - 1;
                let ratio = BigRational::new(BigInt::from(n), BigInt::from(4 * range * l as u64));
                let lhs = BigRational::from_integer(BigInt::from(n)) * num_traits::pow(ratio, e as usize);
                let direct = lhs < BigRational::one();
                assert!(!lhs.is_zero());
                assert_eq!(lemma37_holds(n, range, l).unwrap(), direct, "n = {n}, N = {range}, L = {l}");
            }
        }
    }
}

fn behrend_and_corners() {
    for m in 1..=4096u64 {
        let b = behrend_set(m);
        assert!(b.iter().all(|&v| v < m));
        assert_eq!(find_three_ap(&b), None, "M = {m}");
    }
    for n in 1..=64u32 {
        for b in [behrend_set(3 * n as u64), greedy_ap_free(3 * n as u64)] {
            let s = corner_free_from_ap_free(&b, n).unwrap();
            // Brute force over every corner.
            let cells: BTreeSet<(u32, u32)> = s.iter().map(|p| (p.0[0], p.0[1])).collect();
            for &(a, c) in &cells {
                for d in 1..n {
                    assert!(!(cells.contains(&(a + d, c)) && cells.contains(&(a, c + d))), "corner at ({a},{c}) d = {d}");
                }
            }
            assert!(find_corner(&s).is_none());
        }
    }
}

fn closure_oracles() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..10_000 {
        let k = rng.gen_range(2..=4);
        let n = rng.gen_range(1..=4);
        let range = rng.gen_range(1..=5);
        let dims = Dims::new(k, n, range).unwrap();
        let density: f64 = rng.gen_range(0.0..0.5);
        let s = PointSet::new(dims, dims.points().filter(|_| rng.gen_bool(density))).unwrap();
        assert_eq!(closure_fixpoint(&s).unwrap(), closure_min(&s));
    }
    // k = 2: every partial injection of [n] into [N].
    for n in 1..=4u32 {
        for range in 1..=4u32 {
            let dims = Dims::new(2, n, range).unwrap();
            let mut stack: Vec<(u32, Vec<Point>)> = vec![(0, vec![])];
            while let Some((row, pts)) = stack.pop() {
                if row == n {
                    let s = PointSet::new(dims, pts).unwrap();
                    let (m, c) = closure_stats(&s).unwrap();
                    assert_eq!(c, m * m);
                    continue;
                }
                stack.push((row + 1, pts.clone()));
                for v in 0..range {
                    if pts.iter().all(|p| p.0[1] != v) {
                        let mut next = pts.clone();
                        next.push(Point(vec![row, v]));
                        stack.push((row + 1, next));
                    }
                }
            }
        }
    }
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn()); 12] = [
        ("exactly-n correctness, n <= 256", exactly_n_correctness),
        ("exactly-n cost scaling in sqrt(log n)", exactly_n_cost_scaling),
        ("vector protocol correctness, identity and cost", vector_protocol),
        ("alpha(XOR4) = 8 and alpha-bar(4,4) = 9", exact_small_extremals),
        ("tensor square of the 8-set", tensor_law),
        ("translate-cover pipeline", cover_pipeline),
        ("chi against alpha and transcripts", chi_d_consistency),
        ("conversion round trips and schedules", conversions),
        ("psi bijection and X-free equality", psi_and_xfree),
        ("extraction engine and exact bound checks", extraction_engine),
        ("Behrend and corner-free oracles", behrend_and_corners),
        ("closure oracles", closure_oracles),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check));
        let status = if outcome.is_ok() { "PASS" } else { "FAIL" };
        println!("criterion {:>2}: {status}  {name} ({:.1?})", i + 1, start.elapsed());
        if outcome.is_err() {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
