//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pathsys::counting::{
    asymptotic_check, asymptotic_limit, boxed_brute, boxed_count, count_d2, enumerate_consistent,
    signature_separation_experiment, sym_brute, sym_count, PlanePartition, DEFAULT_CONSISTENT_CAP,
};
use pathsys::generators::{
    admissible_pairs, enumerate_diam2, enumerate_monotone, gen_bipartite, gen_gnp, matching_weights, monotone_system,
    perfect_matching, random_choices, Via, DEFAULT_DIAM2_CAP, DEFAULT_MONOTONE_CAP,
};
use pathsys::json::Json;
use pathsys::metrize::{
    closure, delta, diameter_two_witness, induce_system, integral_witness_search, is_realizable, is_strictly_metric,
    realize_weights, triple_signature, verify_witness, DeltaVector, Inducement, Realizability, SearchOptions,
    SearchOutcome, WeightFunction, WitnessAlpha,
};
use pathsys::resume::{all_resumes, extract_resume, recover_with_rounds, DEFAULT_RESUME_CAP};
use pathsys::triple::all_triples;
use pathsys::vc::{build_with_retries, family_of_system, is_maximum_class, vc_dim, Chooser};
use pathsys::{Graph, Pair, PathSystem, Rational, TripleSet};

const TRIPLES: &str = include_str!("../../../fixtures/eight_point_triples.json");
const WITNESS: &str = include_str!("../../../fixtures/eight_point_witness.json");

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

fn eight_point_example() -> Outcome {
    let s = TripleSet::from_json(TRIPLES).map_err(|e| e.to_string())?;
    let alpha = WitnessAlpha::from_json(WITNESS).map_err(|e| e.to_string())?;
    ensure(s.len() == 7, "fixture has seven triples")?;
    // (a) the printed identity, coordinate by coordinate.
    let lhs = triple_signature(&s);
    let mut rhs = vec![Rational::from_integer(0.into()); lhs.coords().len()];
    for (t, a) in alpha.iter() {
        for (i, c) in delta(*t, 8).coords().iter().enumerate() {
            rhs[i] += a * Rational::from_integer((*c).into());
        }
    }
    let identity = lhs
        .coords()
        .iter()
        .zip(&rhs)
        .all(|(l, r)| Rational::from_integer((*l).into()) == *r);
    ensure(identity, "printed combination differs from the signature")?;
    ensure(verify_witness(&s, &alpha), "printed witness fails verification")?;
    // (b) the solver reaches the same verdict with its own witness.
    let support = match is_realizable(&s) {
        Realizability::No(w) => {
            ensure(verify_witness(&s, &w), "solver witness fails verification")?;
            w.support().count()
        }
        Realizability::Yes(_) => return Err("set was realized".into()),
    };
    // (c) no integral witness.
    let options = SearchOptions {
        budget: Some(Duration::from_secs(30 * 60)),
        progress_every: 0,
    };
    match integral_witness_search(&s, &options, &mut |_| {}) {
        SearchOutcome::NotFound { nodes } => Ok(format!(
            "identity exact; not realizable (witness support {support}); no integral witness ({nodes} nodes)"
        )),
        SearchOutcome::Found(items) => Err(format!("integral witness found: {items:?}")),
        SearchOutcome::Inconclusive { nodes, .. } => Err(format!("budget exhausted after {nodes} nodes")),
    }
}

fn plane_partitions() -> Outcome {
    for r in 0..=4u64 {
        for s in 0..=4u64 {
            for t in 0..=4u64 {
                let (f, b) = (boxed_count(r, s, t), boxed_brute(r as usize, s as usize, t));
                ensure(f == b, format!("N({r},{s},{t}): formula {f} vs brute {b}"))?;
            }
        }
    }
    for r in 0..=4u64 {
        for t in 0..=4u64 {
            let (f, b) = (sym_count(r, t), sym_brute(r as usize, t));
            ensure(f == b, format!("S({r},{t}): formula {f} vs brute {b}"))?;
            let mut num = BigUint::from(1u32);
            let mut den = BigUint::from(1u32);
            for i in 1..=r {
                num *= 2 * i + t - 1;
                den *= 2 * i - 1;
            }
            ensure(
                &f * &f * &den == boxed_count(r, r, t) * num,
                format!("square identity at ({r},{t})"),
            )?;
        }
    }
    let example = PlanePartition::new(vec![vec![5, 3, 3, 1], vec![4, 2, 1, 0], vec![2, 0, 0, 0]])
        .ok_or("example is not a plane partition")?;
    ensure(
        example.is_boxed(5) && example.sum() == 21,
        "example must be (3,4,5)-boxed with sum 21",
    )?;
    Ok(format!(
        "125 boxed and 25 symmetric counts agree; N(2,2,2) = {}",
        boxed_count(2, 2, 2)
    ))
}

fn asymptotics() -> Outcome {
    let value = asymptotic_check(128);
    let limit = asymptotic_limit();
    let rel = ((&value - &limit) / rat(7848, 10000)).abs();
    ensure(
        rel < rat(1, 10),
        format!("relative error {}", pathsys::counting::approx(&rel)),
    )?;
    Ok(format!(
        "ln N(128,128,128)/128² = {:.6}, limit {:.6}, relative error {:.1e}",
        pathsys::counting::approx(&value),
        pathsys::counting::approx(&limit),
        pathsys::counting::approx(&rel)
    ))
}

fn diameter_two_counts() -> Outcome {
    let mut graphs = 0;
    let mut seed = 0;
    let mut total = BigUint::from(0u32);
    while graphs < 10 {
        let g = gen_gnp(7, &rat(3, 5), seed).map_err(|e| e.to_string())?;
        seed += 1;
        if !g.has_diameter_at_most_two() {
            continue;
        }
        graphs += 1;
        let listed = enumerate_diam2(&g, DEFAULT_DIAM2_CAP).map_err(|e| e.to_string())?;
        let formula = count_d2(&g);
        ensure(
            formula == BigUint::from(listed.len()),
            format!("seed {}: {formula} vs {}", seed - 1, listed.len()),
        )?;
        let distinct: BTreeSet<&PathSystem> = listed.iter().collect();
        ensure(distinct.len() == listed.len(), "enumeration repeats a system")?;
        ensure(
            listed.iter().all(PathSystem::is_consistent),
            "inconsistent diameter-2 system",
        )?;
        total += formula;
    }
    Ok(format!("10 graphs from {seed} draws, {total} systems in total"))
}

fn resume_round_trip(systems: &[PathSystem]) -> Outcome {
    let mut resumes = 0;
    for sys in systems {
        let canonical = extract_resume(sys).map_err(|e| e.to_string())?;
        let all = all_resumes(sys, DEFAULT_RESUME_CAP).map_err(|e| e.to_string())?;
        ensure(all.contains(&canonical), "canonical résumé missing from the list")?;
        for f in &all {
            let rec = recover_with_rounds(f).map_err(|e| format!("{sys}: {e}"))?;
            ensure(&rec.system == sys, format!("{sys} recovered as {}", rec.system))?;
            ensure(rec.rounds_used <= sys.n(), "too many rounds")?;
            resumes += 1;
        }
    }
    Ok(format!("{} systems, {resumes} résumés recovered", systems.len()))
}

fn random_weighted_graph(rng: &mut ChaCha8Rng) -> WeightFunction {
    loop {
        let n = rng.gen_range(2..=5);
        let mut edges = Vec::new();
        for p in pathsys::graph::pairs(n) {
            if rng.gen_bool(0.6) {
                edges.push((p.lo(), p.hi()));
            }
        }
        let g = Graph::from_edges(n, edges).expect("valid edges");
        if !g.is_connected() {
            continue;
        }
        let w: BTreeMap<Pair, Rational> = g
            .edges()
            .iter()
            .map(|e| (*e, rat(rng.gen_range(1..=6), rng.gen_range(1..=3))))
            .collect();
        return WeightFunction::new(g, w).expect("positive weights");
    }
}

fn metrizability(systems: &[PathSystem]) -> Outcome {
    let mut strict = 0;
    for sys in systems {
        let direct = is_strictly_metric(sys).map_err(|e| e.to_string())?;
        let via_triples = is_realizable(&sys.colinear_triples());
        ensure(
            direct.is_yes() == via_triples.is_yes(),
            format!("{sys}: the two programs disagree"),
        )?;
        if let Realizability::Yes(rho) = direct {
            strict += 1;
            ensure(
                rho.colinear_triples() == sys.colinear_triples(),
                format!("{sys}: T(ρ) ≠ T(P)"),
            )?;
            let w = realize_weights(sys, &rho).map_err(|e| e.to_string())?;
            let induced = induce_system(&w).map_err(|e| e.to_string())?;
            ensure(
                induced == Inducement::Unique(sys.clone()),
                format!("{sys}: weights induce {induced:?}"),
            )?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut unique = 0;
    let mut draws = 0;
    while unique < 200 {
        draws += 1;
        let w = random_weighted_graph(&mut rng);
        if let Inducement::Unique(sys) = induce_system(&w).map_err(|e| e.to_string())? {
            unique += 1;
            ensure(
                is_strictly_metric(&sys).map_err(|e| e.to_string())?.is_yes(),
                format!("{sys} called non-strict"),
            )?;
        }
    }
    Ok(format!(
        "{} consistent systems on [4], {strict} strictly metric; 200 induced systems ({draws} draws) all strict",
        systems.len()
    ))
}

fn monotone_strictness() -> Outcome {
    let mut counts = Vec::new();
    for n in 2..=4 {
        let matrices = enumerate_monotone(n, DEFAULT_MONOTONE_CAP).map_err(|e| e.to_string())?;
        for m in &matrices {
            let sys = monotone_system(m);
            ensure(sys.is_consistent(), "monotone system must be consistent")?;
            ensure(
                is_strictly_metric(&sys).map_err(|e| e.to_string())?.is_yes(),
                format!("{sys} is not strict"),
            )?;
            let small = diameter_two_witness(&sys).map_err(|e| e.to_string())?;
            ensure(small.is_feasible(), format!("{sys}: diameter-2 program infeasible"))?;
        }
        counts.push(format!("n={n}: {}", matrices.len()));
    }
    Ok(format!("all strictly metric ({})", counts.join(", ")))
}

fn signature_separation() -> Outcome {
    let report = signature_separation_experiment(4).map_err(|e| e.to_string())?;
    ensure(report.collisions == 0, format!("{} collisions", report.collisions))?;
    Ok(format!(
        "{} strictly metric systems, {} résumés against {} partial functions, 0 collisions",
        report.strictly_metric_systems, report.resumes_checked, report.partial_functions
    ))
}

fn closure_by_signature() -> Outcome {
    let triples = all_triples(4);
    let mut sets = vec![TripleSet::new(4)];
    for (i, a) in triples.iter().enumerate() {
        sets.push(TripleSet::from_triples(4, [*a]).expect("single triple"));
        for b in &triples[i + 1..] {
            sets.push(TripleSet::from_triples(4, [*a, *b]).expect("two triples"));
        }
    }
    let mut groups: HashMap<DeltaVector, Vec<TripleSet>> = HashMap::new();
    for s in sets {
        groups.entry(triple_signature(&s)).or_default().push(s);
    }
    let mut shared = 0;
    for group in groups.values() {
        let first = closure(&group[0]);
        for s in &group[1..] {
            ensure(
                closure(s) == first,
                format!("closures differ for {} and {}", group[0], s),
            )?;
        }
        if group.len() > 1 {
            shared += 1;
        }
    }
    Ok(format!(
        "79 sets in {} signature groups ({shared} with several members)",
        groups.len()
    ))
}

fn constructions() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut choice_vectors: BTreeSet<Vec<Via>> = BTreeSet::new();
    while choice_vectors.len() < 500 {
        choice_vectors.insert(
            (0..15)
                .map(|_| if rng.gen_bool(0.5) { Via::First } else { Via::Second })
                .collect(),
        );
    }
    let mut systems = BTreeSet::new();
    for (i, choices) in choice_vectors.iter().enumerate() {
        let c = gen_bipartite(6, choices, i as u64).map_err(|e| e.to_string())?;
        systems.insert(c.system);
    }
    ensure(
        systems.len() == 500,
        "two choice vectors gave the same bipartite system",
    )?;

    let mut matching_systems = 0;
    for seed in 0..50u64 {
        let g = gen_gnp(40, &rat(1, 2), seed).map_err(|e| e.to_string())?;
        let m = perfect_matching(&g, seed).map_err(|e| e.to_string())?;
        let adm = admissible_pairs(&g, &m);
        let a = matching_weights(&g, &m, &random_choices(&adm, seed), seed).map_err(|e| e.to_string())?;
        if !adm.is_empty() {
            let mut flipped = random_choices(&adm, seed);
            let first = *flipped.keys().next().expect("non-empty");
            let via = flipped[&first];
            flipped.insert(first, if via == Via::First { Via::Second } else { Via::First });
            let b = matching_weights(&g, &m, &flipped, seed + 1000).map_err(|e| e.to_string())?;
            ensure(a.system != b.system, "flipping one choice left the system unchanged")?;
        }
        matching_systems += 1;
    }

    let mut total = 0usize;
    for seed in 0..20u64 {
        let g = gen_gnp(40, &rat(1, 2), 100 + seed).map_err(|e| e.to_string())?;
        let m = perfect_matching(&g, 100 + seed).map_err(|e| e.to_string())?;
        total += admissible_pairs(&g, &m).len();
    }
    let mean = total as f64 / 20.0;
    ensure((mean - 23.75).abs() <= 0.25 * 23.75, format!("admissible mean {mean}"))?;
    Ok(format!(
        "500 bipartite systems distinct; {matching_systems} matching systems certified; admissible mean {mean:.2}"
    ))
}

fn vc_classes(by_n: &[Vec<PathSystem>]) -> Outcome {
    let mut checked = 0;
    for systems in by_n {
        for sys in systems {
            let f = family_of_system(sys).map_err(|e| e.to_string())?;
            ensure(
                f.is_intersection_closed(),
                format!("{sys}: family not intersection-closed"),
            )?;
            ensure(
                is_maximum_class(&f, 2),
                format!("{sys}: not a maximum class of dimension 2"),
            )?;
            checked += 1;
        }
    }
    let mut built = Vec::new();
    for (n, d) in [(8, 2), (10, 2), (12, 2), (8, 3)] {
        let (seed, _, f) =
            build_with_retries(n, d, &rat(7, 10), 0, 10, Chooser::Smallest).map_err(|e| format!("({n},{d}): {e}"))?;
        ensure(
            is_maximum_class(&f, d) && vc_dim(&f) == d,
            format!("({n},{d}) fails the maximum-class check"),
        )?;
        built.push(format!("({n},{d}) seed {seed}"));
    }
    Ok(format!("{checked} path-system families; built {}", built.join(", ")))
}

fn main() -> ExitCode {
    let consistent: Vec<Vec<PathSystem>> = (2..=4)
        .map(|n| enumerate_consistent(n, DEFAULT_CONSISTENT_CAP).expect("small n"))
        .collect();
    let four = &consistent[2];
    let criteria: Vec<Criterion> = vec![
        ("explicit 8-point triple set", Box::new(eight_point_example)),
        ("plane partition formulas", Box::new(plane_partitions)),
        ("boxed plane partition asymptotics", Box::new(asymptotics)),
        ("diameter-2 product formula", Box::new(diameter_two_counts)),
        ("résumé round trip", Box::new(|| resume_round_trip(four))),
        ("metrizability cross-checks", Box::new(|| metrizability(four))),
        ("monotone systems are strictly metric", Box::new(monotone_strictness)),
        ("signature separation", Box::new(signature_separation)),
        ("closure constant on signature classes", Box::new(closure_by_signature)),
        ("certified constructions", Box::new(constructions)),
        ("maximum VC classes", Box::new(|| vc_classes(&consistent))),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
