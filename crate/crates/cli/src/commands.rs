//! One function per subcommand. Each returns an [`Outcome`]; writing and exit
//! codes are handled by the caller.

use anyhow::{anyhow, bail, Context, Result};
use cellspace::folner::{check_doubling, doubling_from_failure, folner_search, ratios, NamedSet, SearchOutcome};
use cellspace::io::{measure_from_json, DecompositionFile};
use cellspace::measure::{check_semi_invariance, FAMeasure};
use cellspace::paradox::{
    build_graph, canonical_free_decomposition, decomposition_from_map, harem_matching, two_to_one_from_matching,
    verify_decomposition, BipartiteGraph, Decomposition, HaremOutcome,
};
use cellspace::space::axioms::verify_axioms;
use cellspace::transfer::{check_transfer_conditions, inverse_pair_witness, transfer_invariance_check, Subgroup};
use cellspace::{CellSpace, Rational, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::{self, Loaded, MeasureKind};

/// A table for `--format csv`.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

pub struct Outcome {
    pub passed: bool,
    pub result: Value,
    pub table: Option<Table>,
    pub witness: Option<Value>,
}

impl Outcome {
    fn pass(result: Value, table: Option<Table>) -> Self {
        Outcome { passed: true, result, table, witness: None }
    }
}

pub struct Options {
    pub parallel: bool,
    pub seed: u64,
}

fn map_maybe_par<T: Sync, U: Send>(items: &[T], parallel: bool, f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    if parallel {
        items.par_iter().map(f).collect()
    } else {
        items.iter().map(f).collect()
    }
}

pub fn axioms(l: &Loaded) -> Result<Outcome> {
    let report = verify_axioms(&l.space, &l.window()?, &l.coset_sample()?);
    let rows = report
        .checks
        .iter()
        .map(|c| vec![c.name.to_string(), c.passed.to_string(), c.cases.to_string(), c.witness.clone().unwrap_or_default()])
        .collect();
    let failures: Vec<_> = report.failures().cloned().collect();
    Ok(Outcome {
        passed: report.passed(),
        result: serde_json::to_value(&report)?,
        table: Some(Table { header: vec!["check", "passed", "cases", "witness"], rows }),
        witness: (!failures.is_empty()).then(|| json!({ "failed_checks": failures })),
    })
}

pub fn ratios_cmd(l: &Loaded, opts: &Options) -> Result<Outcome> {
    let e = l.expansion()?;
    let family = l.family(&e)?;
    let per_set = map_maybe_par(&family, opts.parallel, |(set, w)| {
        e.cosets().iter().map(|c| ratios(&l.space, set, c, w)).collect::<Result<Vec<_>, _>>()
    });
    let mut rows = Vec::new();
    let mut records = Vec::new();
    for recs in per_set {
        for r in recs? {
            rows.push(vec![
                l.space.name().to_string(),
                r.set_id.clone(),
                r.size.to_string(),
                r.coset.clone(),
                r.ratio_out.to_string(),
                r.ratio_in.to_string(),
                r.certified.to_string(),
            ]);
            records.push(json!({
                "set_id": r.set_id, "size": r.size, "coset": r.coset,
                "ratio_out": r.ratio_out.to_string(), "ratio_in": r.ratio_in.to_string(),
                "certified": r.certified,
            }));
        }
    }
    Ok(Outcome::pass(
        json!({ "records": records }),
        Some(Table { header: vec!["space", "set_id", "|F|", "coset", "ratio_out", "ratio_in", "certified"], rows }),
    ))
}

fn epsilon(l: &Loaded) -> Result<(Rational, usize)> {
    let f = l.config.folner.as_ref().ok_or_else(|| anyhow!("[folner] with epsilon is required"))?;
    Ok((config::rational(&f.epsilon)?, f.max_cosets))
}

fn family_sets(l: &Loaded, e: &cellspace::ExpansionSet) -> Result<Vec<NamedSet>> {
    Ok(l.family(e)?.into_iter().map(|(s, _)| s).collect())
}

pub fn folner_search_cmd(l: &Loaded) -> Result<Outcome> {
    let e = l.expansion()?;
    let (eps, _) = epsilon(l)?;
    let family = family_sets(l, &e)?;
    let out = folner_search(&l.space, &e, &eps, &family)?;
    Ok(match out {
        SearchOutcome::Found { index, worst } => Outcome::pass(
            json!({
                "outcome": "found", "epsilon": eps.to_string(), "index": index, "set_id": worst.set_id,
                "size": family[index].points.len(), "worst_coset": worst.coset.to_string(), "worst_ratio": worst.ratio.to_string(),
            }),
            Some(Table {
                header: vec!["set_id", "worst_coset", "worst_ratio"],
                rows: vec![vec![worst.set_id.clone(), worst.coset.to_string(), worst.ratio.to_string()]],
            }),
        ),
        SearchOutcome::Exhausted(ev) => {
            let best = ev.best().expect("non-empty family");
            let rows = ev.per_set.iter().map(|w| vec![w.set_id.clone(), w.coset.to_string(), w.ratio.to_string()]).collect();
            Outcome::pass(
                json!({
                    "outcome": "exhausted", "epsilon": eps.to_string(),
                    "best": { "set_id": best.set_id, "worst_coset": best.coset.to_string(), "worst_ratio": best.ratio.to_string() },
                    "per_set": ev.per_set.iter().map(|w| json!({
                        "set_id": w.set_id, "worst_coset": w.coset.to_string(), "worst_ratio": w.ratio.to_string(),
                    })).collect::<Vec<_>>(),
                }),
                Some(Table { header: vec!["set_id", "worst_coset", "worst_ratio"], rows }),
            )
        }
    })
}

fn doubling_verdict_json(v: &cellspace::folner::DoublingVerdict) -> Value {
    json!({ "set_id": v.set_id, "size": v.size, "image_size": v.image_size, "passed": v.passed })
}

fn doubling_outcome(verdicts: &[cellspace::folner::DoublingVerdict], mut result: Value) -> Outcome {
    let failed: Vec<_> = verdicts.iter().filter(|v| !v.passed).map(doubling_verdict_json).collect();
    let rows = verdicts
        .iter()
        .map(|v| vec![v.set_id.clone(), v.size.to_string(), v.image_size.to_string(), v.passed.to_string()])
        .collect();
    result["verdicts"] = verdicts.iter().map(doubling_verdict_json).collect();
    Outcome {
        passed: failed.is_empty(),
        result,
        table: Some(Table { header: vec!["set_id", "|F|", "|F⊵E|", "passed"], rows }),
        witness: (!failed.is_empty()).then(|| json!({ "failed_sets": failed })),
    }
}

/// Without `[folner]` the configured expansion is checked as is; with it, a
/// doubling set is derived from a failed search first.
pub fn doubling(l: &Loaded) -> Result<Outcome> {
    let e1 = l.expansion()?;
    let family = family_sets(l, &e1)?;
    if l.config.folner.is_none() {
        let verdicts = check_doubling(&l.space, &e1, &family);
        return Ok(doubling_outcome(&verdicts, json!({ "expansion_size": e1.len() })));
    }
    let (eps, max_cosets) = epsilon(l)?;
    let ev = match folner_search(&l.space, &e1, &eps, &family)? {
        SearchOutcome::Found { worst, .. } => {
            return Ok(Outcome::pass(
                json!({
                    "outcome": "folner set found; no failure evidence for doubling",
                    "set_id": worst.set_id, "worst_ratio": worst.ratio.to_string(),
                }),
                Some(Table { header: vec!["set_id", "|F|", "|F⊵E|", "passed"], rows: vec![] }),
            ))
        }
        SearchOutcome::Exhausted(ev) => ev,
    };
    let d = doubling_from_failure(&l.space, &e1, &eps, &ev, max_cosets)?;
    let verdicts = check_doubling(&l.space, &d.expansion, &family);
    Ok(doubling_outcome(
        &verdicts,
        json!({
            "epsilon": eps.to_string(),
            "xi": d.xi.to_string(),
            "n": d.n,
            "e2": d.e2.cosets().iter().map(ToString::to_string).collect::<Vec<_>>(),
            "expansion_size": d.expansion.len(),
            "contains_identity": d.expansion.contains_identity(),
            "expansion": d.expansion.cosets().iter().map(ToString::to_string).collect::<Vec<_>>(),
        }),
    ))
}

fn harem_witness(g: &BipartiteGraph, out: &HaremOutcome, k: usize) -> Value {
    match out {
        HaremOutcome::Matched(_) => Value::Null,
        HaremOutcome::LeftViolation { a, neighbours } => json!({
            "kind": "left Hall violation", "k": k,
            "set": a.iter().map(|&x| g.left[x].to_string()).collect::<Vec<_>>(),
            "right_neighbours": neighbours, "needed": k * a.len(),
        }),
        HaremOutcome::RightViolation { b, neighbours } => json!({
            "kind": "right Hall violation", "k": k,
            "set": b.iter().map(|&y| g.right[y].to_string()).collect::<Vec<_>>(),
            "left_neighbours": neighbours,
        }),
        HaremOutcome::Mixed => json!({ "kind": "infeasible; no one-sided witness (boundary effects)", "k": k }),
    }
}

pub fn harem(l: &Loaded) -> Result<Outcome> {
    let e = l.expansion()?;
    let k = l.config.harem.as_ref().map_or(2, |h| h.k);
    let g = build_graph(&l.space, &e, &l.window()?)?;
    let out = harem_matching(&g, k)?;
    let summary = json!({
        "k": k, "left": g.left.len(), "right": g.right.len(), "edges": g.edge_count(),
        "interior_left": g.left_interior.iter().filter(|&&b| b).count(),
        "interior_right": g.right_interior.iter().filter(|&&b| b).count(),
    });
    Ok(match &out {
        HaremOutcome::Matched(m) => {
            let rows: Vec<Vec<String>> = m.pairs().map(|(x, y)| vec![g.left[x].to_string(), g.right[y].to_string()]).collect();
            Outcome::pass(
                json!({ "graph": summary, "matched": true, "pairs": rows }),
                Some(Table { header: vec!["left", "right"], rows }),
            )
        }
        _ => {
            let w = harem_witness(&g, &out, k);
            Outcome { passed: false, result: json!({ "graph": summary, "matched": false, "violation": w }), table: None, witness: Some(w) }
        }
    })
}

fn decomposition_outcome(space: &CellSpace, d: &Decomposition, extra: Value) -> Result<Outcome> {
    let rep = verify_decomposition(space, d);
    let failures: Vec<_> = rep.checks.iter().filter(|c| !c.passed).cloned().collect();
    let mut result = json!({ "report": rep, "decomposition": DecompositionFile::from_decomposition(d) });
    if let (Value::Object(r), Value::Object(x)) = (&mut result, extra) {
        r.extend(x);
    }
    Ok(Outcome {
        passed: rep.passed(),
        witness: (!rep.passed()).then(|| json!({ "overlap": rep.overlap, "failed_checks": failures })),
        result,
        table: None,
    })
}

pub fn paradox(l: &Loaded) -> Result<Outcome> {
    let e = l.expansion()?;
    let w = l.window()?;
    let g = build_graph(&l.space, &e, &w)?;
    let out = harem_matching(&g, 2)?;
    let HaremOutcome::Matched(m) = &out else {
        let wit = harem_witness(&g, &out, 2);
        return Ok(Outcome {
            passed: false,
            result: json!({ "stage": "matching", "violation": wit }),
            table: None,
            witness: Some(wit),
        });
    };
    let map = two_to_one_from_matching(&g, m)?;
    let fibers = map.fiber_sizes();
    let two = map.interior.iter().all(|y| fibers.get(&map.phi[y]) == Some(&2));
    let d = decomposition_from_map(&l.space, &map, &e, &w)?;
    let mut o = decomposition_outcome(
        &l.space,
        &d,
        json!({ "stage": "verified", "interior_right": map.interior.len(), "two_to_one_on_interior": two }),
    )?;
    o.passed &= two;
    Ok(o)
}

pub fn verify_decomposition_cmd(l: &Loaded) -> Result<Outcome> {
    let spec = l.config.decomposition.as_ref().ok_or_else(|| anyhow!("[decomposition] is required"))?;
    let d = match (&spec.file, spec.canonical) {
        (Some(file), false) => {
            let path = l.resolve(file);
            let text = std::fs::read_to_string(&path).with_context(|| format!("cannot read {}", path.display()))?;
            let value: Value = serde_json::from_str(&text)?;
            // accept either a bare decomposition or a `paradox` output
            let inner = value.pointer("/result/decomposition").cloned().unwrap_or(value);
            let file: DecompositionFile = serde_json::from_value(inner).context("not a decomposition file")?;
            file.to_decomposition(&l.space)?
        }
        (None, true) => canonical_free_decomposition(&l.space, &l.window()?)?,
        _ => bail!("[decomposition] needs exactly one of file, canonical"),
    };
    decomposition_outcome(&l.space, &d, json!({}))
}

fn measure(l: &Loaded, seed: u64) -> Result<FAMeasure<Rational>> {
    let spec = l.config.measure.as_ref().ok_or_else(|| anyhow!("[measure] is required"))?;
    let w = l.space.whole_window().context("measures need a finite space")?;
    Ok(match spec.kind {
        MeasureKind::Uniform => FAMeasure::uniform(w)?,
        MeasureKind::Point => {
            let p = spec.point.as_deref().ok_or_else(|| anyhow!("[measure] kind = point needs point"))?;
            FAMeasure::point_mass(w, &l.space.parse_point(p)?)?
        }
        MeasureKind::File => {
            let f = spec.file.as_ref().ok_or_else(|| anyhow!("[measure] kind = file needs file"))?;
            measure_from_json(&l.space, &std::fs::read_to_string(l.resolve(f))?)?
        }
        MeasureKind::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let raw: Vec<i64> = (0..w.len()).map(|_| rng.gen_range(1..=12)).collect();
            let total: i64 = raw.iter().sum();
            FAMeasure::new(w, raw.iter().map(|&x| Rational::from_ratio(x, total)).collect())?
        }
    })
}

pub fn measures(l: &Loaded, opts: &Options) -> Result<Outcome> {
    let mu = measure(l, opts.seed)?;
    let rep = check_semi_invariance(&l.space, &mu)?;
    let rows = rep
        .violations
        .iter()
        .map(|v| vec![v.point.clone(), v.coset.clone(), v.image_weight.clone(), v.weight.clone()])
        .collect();
    Ok(Outcome {
        passed: rep.passed,
        witness: (!rep.passed).then(|| json!({ "violations": rep.violations })),
        result: json!({ "measure": cellspace::io::measure_to_json(&mu).parse::<Value>()?, "report": rep }),
        table: Some(Table { header: vec!["point", "coset", "weight(m⊵g)", "weight(m)"], rows }),
    })
}

pub fn transfer(l: &Loaded, opts: &Options) -> Result<Outcome> {
    let spec = l.config.transfer.as_ref().ok_or_else(|| anyhow!("[transfer] with subgroup is required"))?;
    let h = Subgroup::by_name(&l.space, &spec.subgroup)?;
    let w = l.window()?;
    let cosets = l.coset_sample()?;
    let rep = check_transfer_conditions(&l.space, &h, &w, &cosets);
    let mut passed = rep.passed();
    let mut invariance = Vec::new();
    if l.config.measure.is_some() {
        let mu = measure(l, opts.seed)?;
        for c in &cosets {
            let v = match inverse_pair_witness(&l.space, c, &h, &w) {
                Ok(x) => {
                    let v = transfer_invariance_check(&l.space, &mu, c, &x)?;
                    json!({ "coset": c.to_string(), "h": x.to_string(), "passed": v.passed, "witness": v.witness })
                }
                Err(e) => json!({ "coset": c.to_string(), "h": null, "passed": false, "witness": e.to_string() }),
            };
            passed &= v["passed"] == json!(true);
            invariance.push(v);
        }
    }
    let failed: Vec<_> = rep.verdicts.iter().filter(|v| !v.passed).cloned().collect();
    Ok(Outcome {
        passed,
        witness: (!passed).then(|| {
            json!({
                "failed_conditions": failed,
                "missing_inverse_pairs": rep.witnesses.iter().filter(|w| w.h.is_none()).map(|w| w.coset.clone()).collect::<Vec<_>>(),
                "invariance_failures": invariance.iter().filter(|v| v["passed"] != json!(true)).cloned().collect::<Vec<_>>(),
            })
        }),
        result: json!({ "subgroup": spec.subgroup, "report": rep, "passed": rep.passed(), "invariance": invariance }),
        table: None,
    })
}

/// Human-readable summary of a space.
pub fn describe(space: &CellSpace) -> String {
    let mut s = String::new();
    let grp = space.group();
    s.push_str(&format!("space: {}\n", space.name()));
    match space.group_elements() {
        Some(all) => s.push_str(&format!("|G| = {}\n", all.len())),
        None => s.push_str("|G| = infinite\n"),
    }
    s.push_str(&format!("|G0| = {}\n", space.stabiliser().len()));
    if space.stabiliser().len() == 1 {
        s.push_str("G0 is trivial\n");
    }
    let gens: Vec<String> = grp.generators().iter().map(ToString::to_string).collect();
    s.push_str(&format!("generators: {}\n", gens.join(", ")));
    s.push_str(&format!("origin m0 = {}\n", space.origin()));
    s.push_str(&format!("coordinate rule: {}\n", space.coordinate_rule()));
    match space.size() {
        Some(n) => s.push_str(&format!("|M| = {n}, |G/G0| = {n} cosets\n")),
        None => s.push_str("|M| = infinite, |G/G0| = infinite\n"),
    }
    if config::is_group_on_itself(space) {
        s.push_str("semi-action: right multiplication (M = G, G0 trivial)\n");
    }
    let cosets: Vec<_> = match space.all_cosets() {
        Ok(all) => all.into_iter().take(5).collect(),
        Err(_) => space.coset_ball(1).into_iter().take(5).collect(),
    };
    let points: Vec<_> = space.point_ball(1).into_iter().take(5).collect();
    s.push_str("sample m ⊵ gG0 (rows m, columns cosets named by g⟳m0):\n");
    s.push_str(&format!("{:>10} |", "m"));
    for c in &cosets {
        s.push_str(&format!(" {:>10}", c.to_string()));
    }
    s.push('\n');
    for m in &points {
        s.push_str(&format!("{:>10} |", m.to_string()));
        for c in &cosets {
            s.push_str(&format!(" {:>10}", space.semi_action(m, c).to_string()));
        }
        s.push('\n');
    }
    s
}
