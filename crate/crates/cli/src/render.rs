use std::fmt::Write as _;
use std::sync::Arc;

use bn_cells::analysis::{asymptotic, asymptotic_table, Analysis};
use bn_cells::asym::{
    check_alpha_relations, check_cal_identities, check_caracterisation, check_changement_de_base, check_gamma_basis,
    check_ideals, check_ordre_lr, check_tau_gamma, GammaBasis,
};
use bn_cells::cells::{CellData, CellPartition, Relation};
use bn_cells::conjectures::{check_symmetric_a, P15Mode};
use bn_cells::coxeter::CoxeterGroup;
use bn_cells::hecke::HeckeAlgebra;
use bn_cells::kl::KlTable;
use bn_cells::laurent::{Exponent, GammaExp};
use bn_cells::perm::SignedPerm;
use bn_cells::report::{all_hold, CheckReport};
use bn_cells::specialize::{
    build_specialized_kl, check_preservation, compare_specialized_invariants, theta_gamma, WeightPair,
};
use bn_cells::structure::{AFunctionData, StructTable};
use bn_cells::tableau::{alpha, rs_map, shape_of};
use serde_json::{json, Value};

use crate::{CliError, Common, Format, Outcome, Regime};

const SCHEMA_VERSION: u32 = bn_cells::report::SCHEMA_VERSION;

fn envelope(command: &str, config: Value, body: Value) -> String {
    let mut doc = json!({ "schema_version": SCHEMA_VERSION, "command": command, "config": config });
    if let (Value::Object(d), Value::Object(b)) = (&mut doc, body) {
        d.extend(b);
    }
    let mut s = serde_json::to_string_pretty(&doc).expect("json values serialize");
    s.push('\n');
    s
}

fn config(common: &Common, regime: Regime) -> Value {
    match weights(regime) {
        Ok(Some(w)) => json!({ "rank": common.rank, "regime": "specialized", "a": w.a, "b": w.b }),
        _ => json!({ "rank": common.rank, "regime": "asymptotic" }),
    }
}

fn weights(regime: Regime) -> Result<Option<WeightPair>, CliError> {
    match (regime.a, regime.b) {
        (Some(a), Some(b)) => Ok(Some(WeightPair::new(a, b)?)),
        _ => Ok(None),
    }
}

fn specialized_table(n: usize, w: WeightPair) -> Result<KlTable<i64>, CliError> {
    let group = Arc::new(CoxeterGroup::type_b(n));
    let alg = HeckeAlgebra::with_weights(group, |g| if g.is_t() { w.b } else { w.a });
    Ok(KlTable::build(Arc::new(alg))?)
}

fn kl_render<E: Exponent>(t: &KlTable<E>, common: &Common, cfg: Value) -> Outcome {
    let g = t.algebra().group();
    let text = match common.format {
        Format::Tsv => t.to_tsv(),
        Format::Json => {
            let entries: Vec<Value> = (0..t.len())
                .flat_map(|w| {
                    t.c(w)
                        .iter()
                        .map(move |(y, p)| json!({ "w": g.elem(w).to_string(), "y": g.elem(y).to_string(), "p_star": p.to_string() }))
                })
                .collect();
            envelope("kl", cfg, json!({ "elements": t.len(), "entries": entries }))
        }
        Format::Text => {
            let mut s = String::new();
            for w in 0..t.len() {
                let _ = write!(s, "C{}\n{}", g.elem(w), t.algebra().render(t.c(w)));
            }
            s
        }
    };
    Outcome { text, ok: true }
}

pub fn kl(common: &Common, regime: Regime) -> Result<Outcome, CliError> {
    let cfg = config(common, regime);
    Ok(match weights(regime)? {
        Some(w) => kl_render(&specialized_table(common.rank, w)?, common, cfg),
        None => kl_render(&asymptotic_table(common.rank)?, common, cfg),
    })
}

fn element_json(w: &SignedPerm) -> Value {
    let (p, q) = rs_map(w);
    json!({ "element": w.to_string(), "word": w.word_string(), "shape": shape_of(w).to_string(), "p": p, "q": q })
}

fn cells_render(
    g: &CoxeterGroup,
    cells: &CellData,
    relation: Relation,
    common: &Common,
    cfg: Value,
) -> Result<Outcome, CliError> {
    let part = CellPartition::new(relation, cells.get(relation));
    let shape = |class: &[usize]| {
        let s = shape_of(g.elem(class[0])).to_string();
        class.iter().all(|&x| shape_of(g.elem(x)).to_string() == s).then_some(s)
    };
    let text = match common.format {
        Format::Tsv => {
            let mut s = String::from("class\telement\tshape\tq\n");
            for (i, class) in part.classes.iter().enumerate() {
                for &x in class {
                    let w = g.elem(x);
                    let _ = writeln!(s, "{i}\t{w}\t{}\t{}", shape_of(w), rs_map(w).1);
                }
            }
            s
        }
        Format::Json => {
            let classes: Vec<Vec<String>> =
                part.classes.iter().map(|c| c.iter().map(|&x| g.elem(x).to_string()).collect()).collect();
            let details: Vec<Value> = part
                .classes
                .iter()
                .enumerate()
                .map(|(i, class)| {
                    json!({
                        "id": i,
                        "shape": shape(class),
                        "members": class.iter().map(|&x| element_json(g.elem(x))).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let hasse: Vec<Value> = part.hasse.iter().map(|&(lo, hi)| json!([lo, hi])).collect();
            envelope(
                "cells",
                cfg,
                json!({ "relation": relation, "count": part.len(), "classes": classes, "hasse": hasse, "details": details }),
            )
        }
        Format::Text => {
            let mut s = format!("{} {} cells of W_{}\n", part.len(), relation_name(relation), g.rank());
            for (i, class) in part.classes.iter().enumerate() {
                let members: Vec<String> = class.iter().map(|&x| g.elem(x).to_string()).collect();
                let label = shape(class).unwrap_or_else(|| "mixed".into());
                let _ = writeln!(s, "{i:>3}  {label:<12} {}", members.join(" "));
            }
            let pairs: Vec<String> = part.hasse.iter().map(|(lo, hi)| format!("{lo}<{hi}")).collect();
            let _ = writeln!(s, "covers: {}", pairs.join(" "));
            s
        }
    };
    Ok(Outcome { text, ok: true })
}

fn relation_name(r: Relation) -> &'static str {
    match r {
        Relation::Left => "left",
        Relation::Right => "right",
        Relation::TwoSided => "two-sided",
    }
}

pub fn cells(common: &Common, regime: Regime, relation: Relation) -> Result<Outcome, CliError> {
    let mut cfg = config(common, regime);
    cfg["relation"] = json!(relation);
    match weights(regime)? {
        Some(w) => {
            let t = specialized_table(common.rank, w)?;
            cells_render(t.algebra().group(), &CellData::compute(&t), relation, common, cfg)
        }
        None => {
            let t = asymptotic_table(common.rank)?;
            cells_render(t.algebra().group(), &CellData::compute(&t), relation, common, cfg)
        }
    }
}

fn rs_render(elems: &[SignedPerm], format: Format, cfg: Value) -> Result<Outcome, CliError> {
    let text = match format {
        Format::Tsv => {
            let mut s = String::from("element\tshape\tp\tq\n");
            for w in elems {
                let (p, q) = rs_map(w);
                let _ = writeln!(s, "{w}\t{}\t{p}\t{q}", shape_of(w));
            }
            s
        }
        Format::Json => {
            let entries: Vec<Value> = elems.iter().map(element_json).collect();
            envelope("rs", cfg, json!({ "entries": entries }))
        }
        Format::Text => {
            let mut s = String::new();
            for w in elems {
                let (p, q) = rs_map(w);
                let _ = writeln!(s, "{w}  shape {}  P {p}  Q {q}", shape_of(w));
            }
            s
        }
    };
    Ok(Outcome { text, ok: true })
}

pub fn rs_one(element: &str, format: Format) -> Result<Outcome, CliError> {
    let w: SignedPerm = element.parse()?;
    rs_render(std::slice::from_ref(&w), format, json!({ "element": w.to_string() }))
}

pub fn rs_all(rank: usize, format: Format) -> Result<Outcome, CliError> {
    let g = CoxeterGroup::type_b(rank);
    rs_render(g.elements(), format, json!({ "rank": rank }))
}

struct AlphaRow {
    element: String,
    a: String,
    delta: String,
    n: String,
    in_d: bool,
    alpha: String,
}

fn alpha_rows<E: Exponent + std::fmt::Display>(
    t: &KlTable<E>,
    af: &AFunctionData<E>,
    alpha_of: impl Fn(GammaExp) -> String,
) -> Result<Vec<AlphaRow>, CliError> {
    let g = t.algebra().group();
    (0..t.len())
        .map(|z| {
            Ok(AlphaRow {
                element: g.elem(z).to_string(),
                a: af.a[z].to_string(),
                delta: af.delta[z].to_string(),
                n: af.n[z].to_string(),
                in_d: af.in_d[z],
                alpha: alpha_of(alpha(g.elem(z))?),
            })
        })
        .collect()
}

pub fn alpha_cmd(common: &Common, regime: Regime) -> Result<Outcome, CliError> {
    let cfg = config(common, regime);
    let rows = match weights(regime)? {
        Some(w) => {
            let t = specialized_table(common.rank, w)?;
            let af = AFunctionData::compute(&t, &StructTable::build(&t))?;
            alpha_rows(&t, &af, |e| theta_gamma(e, w).to_string())?
        }
        None => {
            let t = asymptotic_table(common.rank)?;
            let af = AFunctionData::compute(&t, &StructTable::build(&t))?;
            alpha_rows(&t, &af, |e| e.to_string())?
        }
    };
    let text = match common.format {
        Format::Tsv => {
            let mut s = String::from("element\ta\tdelta\tn\tin_d\talpha\n");
            for r in &rows {
                let _ = writeln!(s, "{}\t{}\t{}\t{}\t{}\t{}", r.element, r.a, r.delta, r.n, r.in_d, r.alpha);
            }
            s
        }
        Format::Json => {
            let entries: Vec<Value> = rows
                .iter()
                .map(|r| json!({ "element": r.element, "a": r.a, "delta": r.delta, "n": r.n, "in_d": r.in_d, "alpha": r.alpha }))
                .collect();
            envelope("alpha", cfg, json!({ "entries": entries }))
        }
        Format::Text => {
            let mut s = format!("{:<16} {:<10} {:<10} {:>4} {:<4} {}\n", "element", "a", "Delta", "n", "D", "alpha");
            for r in &rows {
                let d = if r.in_d { "yes" } else { "" };
                let _ = writeln!(s, "{:<16} {:<10} {:<10} {:>4} {:<4} {}", r.element, r.a, r.delta, r.n, d, r.alpha);
            }
            s
        }
    };
    Ok(Outcome { text, ok: true })
}

fn reports_render(
    command: &str,
    reports: &[CheckReport],
    format: Format,
    cfg: Value,
    extra: Value,
) -> Result<Outcome, CliError> {
    let ok = all_hold(reports);
    let text = match format {
        Format::Tsv => {
            let mut s = String::from("statement\trank\tholds\tchecked\tfailures\tfirst_counterexample\n");
            for r in reports {
                let first = r.counterexamples.first().map_or("", String::as_str);
                let _ =
                    writeln!(s, "{}\t{}\t{}\t{}\t{}\t{first}", r.statement_id, r.rank, r.holds, r.checked, r.failures);
            }
            s
        }
        Format::Json => {
            let mut body = json!({ "holds": ok, "reports": reports });
            if let (Value::Object(b), Value::Object(e)) = (&mut body, extra) {
                b.extend(e);
            }
            envelope(command, cfg, body)
        }
        Format::Text => {
            let mut s = String::new();
            for r in reports {
                let _ = writeln!(s, "{}", r.summary());
            }
            if let Value::Object(e) = &extra {
                if let Some(Value::Array(signs)) = e.get("epsilon") {
                    let _ = writeln!(s, "experimental: T_w0 eigenvalue signs per left cell");
                    for c in signs {
                        let _ = writeln!(
                            s,
                            "  {:<16} size {:<3} T_w0 ~ +-{:<10} +{:<3} -{:<3} scalar {}",
                            c["representative"].as_str().unwrap_or(""),
                            c["size"],
                            c["monomial"].as_str().unwrap_or(""),
                            c["plus"].as_str().unwrap_or(""),
                            c["minus"].as_str().unwrap_or(""),
                            c["scalar"],
                        );
                    }
                }
            }
            let _ = writeln!(s, "{}", if ok { "all statements hold" } else { "some statements fail" });
            s
        }
    };
    Ok(Outcome { text, ok })
}

pub fn conjectures(common: &Common, mode: P15Mode, epsilon: bool) -> Result<Outcome, CliError> {
    let d = asymptotic(common.rank)?;
    let inv = d.invariants();
    let mut reports = inv.all(mode)?;
    reports.extend(inv.check_tw0(&[-2, -1, 0, 1, 2]));
    let p15 = match mode {
        P15Mode::Exhaustive => json!("exhaustive"),
        P15Mode::Sample { count, seed } => json!({ "samples": count, "seed": seed }),
    };
    let cfg = json!({ "rank": common.rank, "regime": "asymptotic", "p15": p15, "epsilon": epsilon });
    let extra = if epsilon {
        json!({ "epsilon": inv.epsilon_signs(), "epsilon_note": "experimental; no claim is made about epsilon_j" })
    } else {
        json!({})
    };
    reports_render("conjectures", &reports, common.format, cfg, extra)
}

pub fn specialize(common: &Common, a: i64, b: i64) -> Result<Outcome, CliError> {
    let w = WeightPair::new(a, b)?;
    let asym = asymptotic(common.rank)?;
    let spec = build_specialized_kl(&asym.table, w)?;
    let rep = check_preservation(&asym.table, &spec, w)?;
    let invariants = if rep.threshold_satisfied {
        compare_specialized_invariants(&asym, &Analysis::compute(spec)?, w)?
    } else {
        Vec::new()
    };
    let ok = rep.as_predicted() && all_hold(&invariants);
    let cfg = json!({ "rank": common.rank, "a": a, "b": b });
    let text = match common.format {
        Format::Tsv => {
            let mut s = String::from("element\tfirst_difference\tcoefficient\texpected\n");
            for x in &rep.witnesses {
                let _ = writeln!(s, "{}\t{}\t{}\t{}", x.window, x.element, x.coefficient, x.expected);
            }
            s
        }
        Format::Json => {
            let mut body = serde_json::to_value(&rep).expect("report serializes");
            body["holds"] = json!(ok);
            body["invariants"] = json!(invariants);
            envelope("specialize", cfg, body)
        }
        Format::Text => {
            let n = common.rank;
            let mut s = format!("W_{n} at a = {a}, b = {b}: b > (n-1)a is {}\n", rep.threshold_satisfied);
            if rep.preserved {
                let _ = writeln!(s, "theta(C_w) = C°_w for every w");
            } else {
                let _ = writeln!(s, "theta(C_w) != C°_w for {} elements:", rep.witnesses.len());
                for x in &rep.witnesses {
                    let word = x.window.parse::<SignedPerm>().map(|p| p.word_string()).unwrap_or_default();
                    let _ = writeln!(
                        s,
                        "  {:<16} {:<14} at T_{}: {} vs {}",
                        x.window, word, x.element, x.coefficient, x.expected
                    );
                }
            }
            let word = rep.canonical_witness.parse::<SignedPerm>().map(|p| p.word_string()).unwrap_or_default();
            let _ = writeln!(s, "canonical witness {} = {word}, fails: {}", rep.canonical_witness, rep.canonical_fails);
            let _ = writeln!(s, "coefficient of theta(T_(s..t) C_sigma) on T°_sigma: {}", rep.witness_coefficient);
            let _ = writeln!(s, "coefficient of theta(Gamma_w) on T°_sigma: {}", rep.witness_gamma_coefficient);
            for r in &invariants {
                let _ = writeln!(s, "{}", r.summary());
            }
            let _ = writeln!(s, "{}", if ok { "as predicted" } else { "not as predicted" });
            s
        }
    };
    Ok(Outcome { text, ok })
}

pub fn report(common: &Common) -> Result<Outcome, CliError> {
    let n = common.rank;
    let d = asymptotic(n)?;
    let mut reports = check_cal_identities(&d.table)?;
    reports.push(check_caracterisation(&d.table)?);
    reports.extend(check_ideals(&d.table));
    let gb = GammaBasis::new(&d.table)?;
    reports.extend(check_gamma_basis(&gb));
    reports.extend(check_ordre_lr(&gb, &d.cells));
    reports.extend(check_alpha_relations(&d.table, &d.af, &d.cells)?);
    reports.extend(check_tau_gamma(&gb)?);
    if n == 2 {
        reports.push(check_changement_de_base(&gb, &d.st, &d.af));
    }
    reports.push(check_symmetric_a(n)?);
    let inv = d.invariants();
    reports.extend(inv.all(P15Mode::default_for(d.table.len()))?);
    reports.extend(inv.check_tw0(&[-2, -1, 0, 1, 2]));
    let cfg = json!({ "rank": n, "regime": "asymptotic" });
    reports_render("report", &reports, common.format, cfg, json!({}))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn envelope_merges_body() {
        let s = envelope("kl", json!({ "rank": 1 }), json!({ "entries": [] }));
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["schema_version"], SCHEMA_VERSION);
        assert_eq!(v["config"]["rank"], 1);
        assert!(v["entries"].is_array());
    }
}
