use std::collections::BTreeMap;
use std::time::Duration;

use serde_json::{json, Value};

use pathsys::counting::{
    boxed_brute, boxed_count, count_d2, count_monotone, enumerate_consistent, sym_brute, sym_count,
};
use pathsys::generators::{
    admissible_pairs, enumerate_diam2, enumerate_monotone, gen_bipartite, gen_gnp, gen_join, gen_join_gamma,
    matching_weights, monotone_system, perfect_matching, random_choices, Via,
};
use pathsys::json::{rational_to_json, Json};
use pathsys::metrize::{
    closure, induce_system, integral_witness_search, is_metric, is_realizable, is_strictly_metric, realize_weights,
    triple_signature, verify_witness, Inducement, MetricVerdict, Realizability, SearchOptions, SearchOutcome,
    WeightFunction, WitnessAlpha,
};
use pathsys::resume::{all_resumes, extract_resume, recover_with_rounds};
use pathsys::vc::{build_with_retries, family_of_system, is_maximum_class, vc_dim, Chooser, SetSystem};
use pathsys::{Consistency, Graph, PathSystem, Rational, Resume, TripleSet};

use crate::report::{read_input, CliError, Report};
use crate::{usage, ChooserArg, Cli, Command, CountCmd, GenCmd, MetrizeCmd, Mode, ResumeCmd, VcCmd, VerifyCmd};

const EIGHT_POINT_TRIPLES: &str = include_str!("../../../fixtures/eight_point_triples.json");
const EIGHT_POINT_WITNESS: &str = include_str!("../../../fixtures/eight_point_witness.json");

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Check { system, graph } => {
            let sys: PathSystem = read_input(system)?;
            let mut report = match sys.check_consistency() {
                Consistency::Consistent => Report::new(true).fact("consistent", true),
                Consistency::Inconsistent { first, second, reason } => Report::new(false)
                    .fact("consistent", false)
                    .fact("violation", format!("{first} {second} {reason:?}")),
            };
            report = report.fact("diameter", sys.diameter());
            if let Some(path) = graph {
                let g: Graph = read_input(path)?;
                let neighborly = sys.is_neighborly(&g)?;
                report = report.fact("neighborly", neighborly);
                report.ok &= neighborly;
            }
            Ok(report)
        }
        Command::Resume(cmd) => resume(cmd),
        Command::Metrize(cmd) => metrize(cmd, cli),
        Command::Induce { weights } => {
            let w: WeightFunction = read_input(weights)?;
            Ok(match induce_system(&w)? {
                Inducement::Unique(sys) => Report::new(true).fact("unique", true).document("system", sys.to_json()),
                Inducement::Ties { pair, count } => Report::new(false)
                    .fact("unique", false)
                    .fact("tied-pair", pair.to_string())
                    .fact("shortest-paths", count),
            })
        }
        Command::Closure { triples, system } => {
            let s = read_triples(triples, *system)?;
            let c = closure(&s);
            Ok(Report::new(true)
                .fact("size", s.len())
                .fact("closure-size", c.len())
                .document("closure", c.to_json()))
        }
        Command::Gen(cmd) => generate(cmd, cli.seed),
        Command::Count(cmd) => count(cmd),
        Command::Vc(cmd) => vc(cmd, cli.seed),
        Command::Verify(VerifyCmd::PaperExample) => eight_point_example(cli.budget),
    }
}

fn read_triples(path: &std::path::Path, from_system: bool) -> Result<TripleSet, CliError> {
    if from_system {
        Ok(read_input::<PathSystem>(path)?.colinear_triples())
    } else {
        read_input(path)
    }
}

fn parse_rational(text: &str) -> Result<Rational, CliError> {
    text.parse()
        .map_err(|_| usage(format!("not a rational number: {text}")))
}

fn resume(cmd: &ResumeCmd) -> Result<Report, CliError> {
    match cmd {
        ResumeCmd::Extract { system } => {
            let sys: PathSystem = read_input(system)?;
            let f = extract_resume(&sys)?;
            Ok(Report::new(true)
                .fact("entries", f.len())
                .document("resume", f.to_json()))
        }
        ResumeCmd::Recover { resume } => {
            let f: Resume = read_input(resume)?;
            let rec = recover_with_rounds(&f)?;
            Ok(Report::new(true)
                .fact("rounds", rec.rounds_used)
                .document("system", rec.system.to_json()))
        }
        ResumeCmd::All { system, cap } => {
            let sys: PathSystem = read_input(system)?;
            let all = all_resumes(&sys, *cap)?;
            let docs: Vec<Value> = all.iter().map(Json::to_json).collect();
            Ok(Report::new(true)
                .fact("count", all.len())
                .document("resumes", Value::Array(docs)))
        }
    }
}

fn search_options(budget: u64) -> SearchOptions {
    SearchOptions {
        budget: Some(Duration::from_secs(budget)),
        progress_every: 100_000,
    }
}

fn integral_search(s: &TripleSet, budget: u64) -> (bool, Report) {
    let outcome = integral_witness_search(s, &search_options(budget), &mut |p| {
        eprintln!(
            "search: {} nodes, {} open, {:.1}s",
            p.nodes,
            p.open,
            p.elapsed.as_secs_f64()
        );
    });
    match outcome {
        SearchOutcome::NotFound { nodes } => (
            true,
            Report::new(true)
                .fact("integral-witness", "not-found")
                .fact("nodes", nodes),
        ),
        SearchOutcome::Found(items) => {
            let found: Vec<Value> = items
                .iter()
                .map(|(t, k)| json!({"triple": t.to_string(), "count": k}))
                .collect();
            (
                false,
                Report::new(true)
                    .fact("integral-witness", "found")
                    .document("integral", Value::Array(found)),
            )
        }
        SearchOutcome::Inconclusive { nodes, elapsed } => (
            false,
            Report::new(false)
                .fact("integral-witness", "inconclusive")
                .fact("nodes", nodes)
                .fact("seconds", elapsed.as_secs()),
        ),
    }
}

fn metrize(cmd: &MetrizeCmd, cli: &Cli) -> Result<Report, CliError> {
    match cmd {
        MetrizeCmd::Test { system, mode } => {
            let sys: PathSystem = read_input(system)?;
            Ok(match mode {
                Mode::Metric => match is_metric(&sys)? {
                    MetricVerdict::Yes(rho) => Report::new(true).fact("metric", true).document("rho", rho.to_json()),
                    MetricVerdict::No(_) => Report::new(false).fact("metric", false),
                },
                Mode::Strict => realizability_report("strictly-metric", is_strictly_metric(&sys)?),
                Mode::Pseudo => realizability_report("pseudo-metric", is_realizable(&sys.colinear_triples())),
            })
        }
        MetrizeCmd::Witness {
            triples,
            system,
            check,
            integral,
        } => {
            let s = read_triples(triples, *system)?;
            let mut report = if let Some(path) = check {
                let alpha: WitnessAlpha = read_input(path)?;
                let ok = verify_witness(&s, &alpha);
                Report::new(ok).fact("witness-valid", ok)
            } else {
                match is_realizable(&s) {
                    Realizability::Yes(rho) => Report::new(false)
                        .fact("realizable", true)
                        .document("rho", rho.to_json()),
                    Realizability::No(alpha) => {
                        let ok = verify_witness(&s, &alpha);
                        Report::new(ok)
                            .fact("realizable", false)
                            .fact("witness-valid", ok)
                            .document("witness", alpha.to_json())
                    }
                }
            };
            if *integral {
                report = report.merge(integral_search(&s, cli.budget).1);
            }
            Ok(report)
        }
        MetrizeCmd::Realize { system } => {
            let sys: PathSystem = read_input(system)?;
            match is_strictly_metric(&sys)? {
                Realizability::Yes(rho) => {
                    let w = realize_weights(&sys, &rho)?;
                    let reproduced = induce_system(&w)? == Inducement::Unique(sys);
                    Ok(Report::new(reproduced)
                        .fact("strictly-metric", true)
                        .fact("reproduces-system", reproduced)
                        .document("weights", w.to_json()))
                }
                Realizability::No(alpha) => Ok(Report::new(false)
                    .fact("strictly-metric", false)
                    .document("witness", alpha.to_json())),
            }
        }
    }
}

fn realizability_report(key: &str, r: Realizability) -> Report {
    match r {
        Realizability::Yes(rho) => Report::new(true).fact(key, true).document("rho", rho.to_json()),
        Realizability::No(alpha) => Report::new(false).fact(key, false).document("witness", alpha.to_json()),
    }
}

fn parse_choices(text: &str, expected: usize) -> Result<Vec<Via>, CliError> {
    let choices = text
        .chars()
        .map(|c| match c {
            '1' => Ok(Via::First),
            '2' => Ok(Via::Second),
            other => Err(usage(format!("choice must be 1 or 2, got {other:?}"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    if choices.len() != expected {
        return Err(usage(format!("expected {expected} choices, got {}", choices.len())));
    }
    Ok(choices)
}

fn generate(cmd: &GenCmd, seed: u64) -> Result<Report, CliError> {
    match cmd {
        GenCmd::Diam2 { graph, cap } => {
            let g: Graph = read_input(graph)?;
            let systems = enumerate_diam2(&g, *cap)?;
            let docs: Vec<Value> = systems.iter().map(Json::to_json).collect();
            Ok(Report::new(true)
                .fact("count", systems.len())
                .document("systems", Value::Array(docs)))
        }
        GenCmd::Bipartite { h, choices } => {
            let pairs = h * h.saturating_sub(1) / 2;
            let choices = match choices {
                Some(text) => parse_choices(text, pairs)?,
                None => {
                    let keys: Vec<(usize, usize)> = (0..*h).flat_map(|i| (i + 1..*h).map(move |j| (i, j))).collect();
                    random_choices(&keys, seed).into_values().collect()
                }
            };
            let c = gen_bipartite(*h, &choices, seed)?;
            let code: String = choices
                .iter()
                .map(|v| if *v == Via::First { '1' } else { '2' })
                .collect();
            Ok(Report::new(true)
                .fact("choices", code)
                .fact("noise-attempts", c.attempts)
                .document(
                    "certified",
                    json!({"system": c.system.to_json(), "weights": c.weights.to_json()}),
                ))
        }
        GenCmd::GnpMatching(args) => {
            let p = parse_rational(&args.p)?;
            let g = gen_gnp(args.n, &p, seed)?;
            let m = perfect_matching(&g, seed)?;
            let admissible = admissible_pairs(&g, &m);
            let c = matching_weights(&g, &m, &random_choices(&admissible, seed), seed)?;
            Ok(Report::new(true)
                .fact("edges", g.num_edges())
                .fact("admissible-pairs", admissible.len())
                .fact("noise-attempts", c.attempts)
                .document(
                    "certified",
                    json!({
                        "graph": g.to_json(),
                        "matching": m.edges(),
                        "system": c.system.to_json(),
                        "weights": c.weights.to_json(),
                    }),
                ))
        }
        GenCmd::Monotone { n, cap } => {
            let matrices = enumerate_monotone(*n, *cap)?;
            let docs: Vec<Value> = matrices
                .iter()
                .map(|m| json!({"matrix": m.to_json(), "system": monotone_system(m).to_json()}))
                .collect();
            Ok(Report::new(true)
                .fact("count", matrices.len())
                .document("monotone", Value::Array(docs)))
        }
        GenCmd::Join { n, gamma } => {
            let g = match gamma {
                Some(text) => gen_join_gamma(*n, &parse_rational(text)?)?,
                None => gen_join(*n),
            };
            Ok(Report::new(true)
                .fact("vertices", g.n())
                .fact("edges", g.num_edges())
                .document("graph", g.to_json()))
        }
    }
}

fn count(cmd: &CountCmd) -> Result<Report, CliError> {
    match cmd {
        CountCmd::D2 { graph } => {
            let g: Graph = read_input(graph)?;
            Ok(Report::new(true).fact("value", count_d2(&g).to_string()))
        }
        CountCmd::Consistent { n, cap, list } => {
            let systems = enumerate_consistent(*n, *cap)?;
            let report = Report::new(true).fact("value", systems.len());
            if *list {
                let docs: Vec<Value> = systems.iter().map(Json::to_json).collect();
                return Ok(report.document("systems", Value::Array(docs)));
            }
            Ok(report)
        }
        CountCmd::Boxed { r, s, t, brute } => {
            let formula = boxed_count(*r, *s, *t);
            if *brute {
                let b = boxed_brute(*r as usize, *s as usize, *t);
                return Ok(Report::new(b == formula)
                    .fact("formula", formula.to_string())
                    .fact("brute-force", b.to_string()));
            }
            Ok(Report::new(true).fact("value", formula.to_string()))
        }
        CountCmd::Sym { r, t, brute } => {
            let formula = sym_count(*r, *t);
            if *brute {
                let b = sym_brute(*r as usize, *t);
                return Ok(Report::new(b == formula)
                    .fact("formula", formula.to_string())
                    .fact("brute-force", b.to_string()));
            }
            Ok(Report::new(true).fact("value", formula.to_string()))
        }
        CountCmd::Monotone { n, cap } => Ok(Report::new(true).fact("value", count_monotone(*n, *cap)?)),
    }
}

fn vc(cmd: &VcCmd, seed: u64) -> Result<Report, CliError> {
    match cmd {
        VcCmd::Family { system } => {
            let sys: PathSystem = read_input(system)?;
            let f = family_of_system(&sys)?;
            let maximum = is_maximum_class(&f, 2);
            Ok(Report::new(maximum)
                .fact("sets", f.len())
                .fact("vc-dimension", vc_dim(&f))
                .fact("maximum-class", maximum)
                .document("family", f.to_json()))
        }
        VcCmd::Dim { sets } => {
            let f: SetSystem = read_input(sets)?;
            Ok(Report::new(true).fact("value", vc_dim(&f)))
        }
        VcCmd::Build {
            n,
            d,
            p,
            attempts,
            chooser,
        } => {
            if *d == 0 {
                return Err(usage("dimension must be at least 1"));
            }
            let chooser = match chooser {
                ChooserArg::Smallest => Chooser::Smallest,
                ChooserArg::Random => Chooser::Random,
            };
            let (used, y, f) = build_with_retries(*n, *d, &parse_rational(p)?, seed, *attempts, chooser)?;
            Ok(Report::new(true)
                .fact("seed", used)
                .fact("top-faces", y.num_top_faces())
                .fact("sets", f.len())
                .fact("vc-dimension", vc_dim(&f))
                .document("build", json!({"complex": y.to_json(), "family": f.to_json()})))
        }
    }
}

fn eight_point_example(budget: u64) -> Result<Report, CliError> {
    let s = TripleSet::from_json(EIGHT_POINT_TRIPLES).map_err(|e| usage(format!("embedded fixture: {e}")))?;
    let alpha = WitnessAlpha::from_json(EIGHT_POINT_WITNESS).map_err(|e| usage(format!("embedded fixture: {e}")))?;
    let sigma: Vec<Rational> = triple_signature(&s)
        .coords()
        .iter()
        .map(|c| Rational::from_integer((*c).into()))
        .collect();
    let identity = sigma == alpha.combination();
    let printed_valid = verify_witness(&s, &alpha);
    let (realizable, solver_valid) = match is_realizable(&s) {
        Realizability::Yes(_) => (true, false),
        Realizability::No(w) => (false, verify_witness(&s, &w)),
    };
    let (not_found, search) = integral_search(&s, budget);
    let coefficients: BTreeMap<String, Value> = alpha
        .iter()
        .map(|(t, a)| (t.to_string(), rational_to_json(a)))
        .collect();
    let ok = identity && printed_valid && !realizable && solver_valid && not_found;
    let report = Report::new(ok)
        .fact("triples", s.to_string())
        .fact("identity-exact", identity)
        .fact("realizable", realizable)
        .fact("printed-witness-valid", printed_valid)
        .fact("solver-witness-valid", solver_valid)
        .document("witness", json!(coefficients));
    Ok(report.merge(search))
}
