use std::collections::BTreeMap;

use serde_json::{json, Value};
use stablerep::modoracle::{irreducible_dim, standard_tableaux, two_row_decomposition};
use stablerep::permrep::{
    build_cl_matrix, induce, restrict_decompose, structure_constants, structure_constants_by_enumeration,
    structure_constants_concrete, tensor_decompose_concrete,
};
use stablerep::stablecat::{
    check_perm_equivalence, compose_generic, evaluate_entry_padic, stable_induce, stable_restrict, stable_tensor,
};
use stablerep::tabloid::TabloidWire;
use stablerep::{detect_period, instantiate_coker, IvPoly, PAdicResidue, Partition, Presentation, StableTabloid, Tabloid};

use crate::args::{Cli, Command, Composable, Route, ShapeType};
use crate::output::{cell, CliError, Table};

type CliResult<T> = Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

/// Inline JSON, or the contents of a file when the argument starts with '@'.
fn read_json_arg(arg: &str) -> CliResult<String> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).or_else(|e| usage(format!("cannot read {path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

/// Resolves a tabloid argument against an optional expected shape and type.
fn resolve_tabloid(arg: &str, shape: Option<&Partition>, ty: Option<&Partition>) -> CliResult<StableTabloid> {
    let arg = arg.trim();
    let need = |what: &str, p: Option<&Partition>| -> CliResult<Partition> {
        p.cloned().ok_or_else(|| CliError::Usage(format!("--{what} is required for tabloid {arg:?}")))
    };
    let one = Partition::new(vec![1]).expect("valid");
    let fixed = |mu: Partition, lam: Partition, counts: Vec<Vec<usize>>| -> CliResult<StableTabloid> {
        if shape.is_some_and(|s| *s != mu) || ty.is_some_and(|t| *t != lam) {
            return usage(format!("tabloid {arg:?} maps {mu} to {lam}, which does not match the given shapes"));
        }
        Ok(StableTabloid::new(mu, lam, counts)?)
    };
    match arg {
        "id" => {
            let mu = match (shape, ty) {
                (Some(s), Some(t)) if s != t => return usage("the identity needs equal shape and type"),
                (Some(s), _) | (None, Some(s)) => s.clone(),
                (None, None) => return usage("the identity needs --shape or --type"),
            };
            Ok(StableTabloid::identity(&mu))
        }
        "dp" => fixed(one.clone(), one, vec![vec![1, 0]]),
        "sum" => fixed(Partition::empty(), one, vec![]),
        "aug" => fixed(one, Partition::empty(), vec![vec![1]]),
        _ if arg.starts_with('#') => {
            let k: usize = arg[1..].parse().or_else(|_| usage(format!("bad tabloid index {arg:?}")))?;
            let (mu, lam) = (need("shape", shape)?, need("type", ty)?);
            let all = StableTabloid::enumerate(&mu, &lam);
            all.get(k).cloned().ok_or_else(|| {
                CliError::Usage(format!("index {k} out of range: {mu} -> {lam} has {} tabloids", all.len()))
            })
        }
        _ => {
            let text = read_json_arg(arg)?;
            let wire: TabloidWire =
                serde_json::from_str(&text).or_else(|e| usage(format!("tabloid JSON {arg:?}: {e}")))?;
            fixed(wire.shape, wire.ty, wire.counts)
        }
    }
}

fn resolve_pair(maps: &Composable) -> CliResult<(StableTabloid, StableTabloid)> {
    let alpha = resolve_tabloid(&maps.alpha, maps.shape.as_ref(), maps.mid.as_ref())?;
    let beta = resolve_tabloid(&maps.beta, Some(maps.mid.as_ref().unwrap_or(alpha.ty())), maps.ty.as_ref())?;
    Ok((alpha, beta))
}

fn shape_type(st: &ShapeType) -> CliResult<(Partition, Partition)> {
    match (&st.shape, &st.ty) {
        (Some(s), Some(t)) => Ok((s.clone(), t.clone())),
        _ => usage("--shape and --type are required"),
    }
}

fn int_terms(table: &BTreeMap<StableTabloid, i64>) -> (Value, Vec<Vec<String>>) {
    let terms: Vec<Value> = table.iter().map(|(tau, v)| json!({"tau": tau, "value": v})).collect();
    let rows = table.iter().map(|(tau, v)| vec![cell(tau), v.to_string()]).collect();
    (Value::Array(terms), rows)
}

pub fn run(cli: &Cli) -> CliResult<Table> {
    match &cli.command {
        Command::Tabloids { st, n } => {
            let (mu, lam) = shape_type(st)?;
            match n {
                None => {
                    let all = StableTabloid::enumerate(&mu, &lam);
                    let rows = all.iter().enumerate().map(|(i, t)| vec![i.to_string(), cell(&t.counts())]).collect();
                    Ok(Table::new(
                        json!({"shape": mu, "type": lam, "count": all.len(), "tabloids": all}),
                        vec!["index", "counts"],
                        rows,
                    ))
                }
                Some(n) => {
                    let all = Tabloid::enumerate(&mu.pad(*n)?, &lam.pad(*n)?);
                    let rows = all.iter().enumerate().map(|(i, t)| vec![i.to_string(), cell(&t.counts())]).collect();
                    Ok(Table::new(
                        json!({"shape": mu, "type": lam, "n": n, "count": all.len(), "tabloids": all}),
                        vec!["index", "counts"],
                        rows,
                    ))
                }
            }
        }
        Command::Homdim { st, n } => {
            let (mu, lam) = shape_type(st)?;
            let count = match n {
                None => StableTabloid::enumerate(&mu, &lam).len(),
                Some(n) => Tabloid::enumerate(&mu.pad(*n)?, &lam.pad(*n)?).len(),
            };
            let json = match n {
                None => json!({"count": count}),
                Some(n) => json!({"count": count, "n": n}),
            };
            Ok(Table::new(json, vec!["count"], vec![vec![count.to_string()]]))
        }
        Command::Clmatrix { tabloid, st, n, p } => {
            let tau = resolve_tabloid(tabloid, st.shape.as_ref(), st.ty.as_ref())?;
            let m = build_cl_matrix(&tau.instantiate(*n)?, *p)?;
            let mut entries = Vec::new();
            let mut rows = Vec::new();
            for j in 0..m.ncols() {
                for &(i, v) in m.column(j) {
                    entries.push(json!([i, j, v]));
                    rows.push(vec![i.to_string(), j.to_string(), v.to_string()]);
                }
            }
            Ok(Table::new(
                json!({"tabloid": tau, "n": n, "p": p, "rows": m.nrows(), "cols": m.ncols(), "entries": entries}),
                vec!["row", "col", "value"],
                rows,
            ))
        }
        Command::Structconst { maps, n, route } => {
            let (alpha, beta) = resolve_pair(maps)?;
            match n {
                None => {
                    let entry = compose_generic(&alpha, &beta)?;
                    let terms: Vec<Value> = entry.iter().map(|(tau, poly)| json!({"tau": tau, "poly": poly})).collect();
                    let rows = entry.iter().map(|(tau, poly)| vec![cell(tau), cell(poly), poly.to_string()]).collect();
                    Ok(Table::new(
                        json!({"alpha": alpha, "beta": beta, "terms": terms}),
                        vec!["tau", "poly", "display"],
                        rows,
                    ))
                }
                Some(n) => {
                    let table = match route {
                        Route::Counting => structure_constants(&alpha, &beta, *n)?,
                        Route::Matrix => structure_constants_concrete(&alpha, &beta, *n)?,
                        Route::Enumeration => structure_constants_by_enumeration(&alpha, &beta, *n)?,
                    };
                    let (terms, rows) = int_terms(&table);
                    Ok(Table::new(
                        json!({"alpha": alpha, "beta": beta, "n": n, "terms": terms}),
                        vec!["tau", "value"],
                        rows,
                    ))
                }
            }
        }
        Command::Interp { values, base, p } => {
            if values.0.is_empty() {
                return usage("--values needs at least one value");
            }
            let poly = IvPoly::from_values(*base, &values.0);
            let period = p.map(|p| poly.period_mod_p(p));
            let rows = poly.diffs().iter().enumerate().map(|(k, d)| vec![k.to_string(), d.to_string()]).collect();
            Ok(Table::new(
                json!({"poly": poly, "degree": poly.degree(), "display": poly.to_string(), "period": period}),
                vec!["k", "diff"],
                rows,
            ))
        }
        Command::EvalT { maps, t } => {
            let (alpha, beta) = resolve_pair(maps)?;
            let t = PAdicResidue::new(t.p, t.t_exp, t.t_residue)?;
            let values = evaluate_entry_padic(&compose_generic(&alpha, &beta)?, &t)?;
            let terms: Vec<Value> = values.iter().map(|(tau, v)| json!({"tau": tau, "value": v})).collect();
            let rows = values.iter().map(|(tau, v)| vec![cell(tau), v.to_string()]).collect();
            Ok(Table::new(json!({"alpha": alpha, "beta": beta, "t": t, "terms": terms}), vec!["tau", "value"], rows))
        }
        Command::CheckEquiv { r, p, n, m, exploratory, summary } => {
            let report = check_perm_equivalence(*r, *p, *n, *m, *exploratory)?;
            let rows = report
                .witnesses
                .iter()
                .map(|w| vec![cell(&w.alpha), cell(&w.beta), cell(&w.at_n), cell(&w.at_m)])
                .collect();
            let mut json = serde_json::to_value(&report).expect("report serializes");
            if *summary {
                json["witness_count"] = json!(report.witnesses.len());
                json.as_object_mut().expect("object").remove("witnesses");
            }
            Ok(Table::new(json, vec!["alpha", "beta", "at_n", "at_m"], rows))
        }
        Command::Tensor { lambda, mu, n } => {
            let parts = match n {
                None => stable_tensor(lambda, mu)?,
                Some(n) => tensor_decompose_concrete(&lambda.pad(*n)?, &mu.pad(*n)?)?,
            };
            let rows = parts.iter().map(|q| vec![q.to_string()]).collect();
            Ok(Table::new(json!({"lambda": lambda, "mu": mu, "n": n, "summands": parts}), vec!["summand"], rows))
        }
        Command::Restrict { lambda, ell, n } => {
            let parts = match n {
                None => stable_restrict(lambda, *ell)?,
                Some(n) => restrict_decompose(lambda, *ell, *n)?,
            };
            let rows = parts.iter().map(|(a, b)| vec![a.to_string(), b.to_string()]).collect();
            let summands: Vec<Value> = parts.iter().map(|(a, b)| json!([a, b])).collect();
            Ok(Table::new(
                json!({"lambda": lambda, "ell": ell, "n": n, "summands": summands}),
                vec!["left", "right"],
                rows,
            ))
        }
        Command::Induce { mu, lambda, n } => {
            let q = match n {
                None => stable_induce(mu, lambda)?,
                Some(n) => induce(mu, lambda, *n)?,
            };
            Ok(Table::new(
                json!({"mu": mu, "lambda": lambda, "n": n, "result": q}),
                vec!["result"],
                vec![vec![q.to_string()]],
            ))
        }
        Command::SpechtDim { lambda } => {
            let dim = standard_tableaux(lambda).len();
            Ok(Table::new(json!({"dim": dim}), vec!["dim"], vec![vec![dim.to_string()]]))
        }
        Command::DDim { lambda, p } => {
            let dim = irreducible_dim(lambda, *p)?;
            Ok(Table::new(json!({"dim": dim}), vec!["dim"], vec![vec![dim.to_string()]]))
        }
        Command::Decomp { n, m, p } => {
            let mult = two_row_decomposition(*n, *m, *p, cli.seed)?;
            let rows = mult.iter().enumerate().map(|(j, k)| vec![j.to_string(), k.to_string()]).collect();
            Ok(Table::new(
                json!({"n": n, "m": m, "p": p, "multiplicities": mult}),
                vec!["j", "multiplicity"],
                rows,
            ))
        }
        Command::Fi { presentation, p, from, to } => {
            let text = read_json_arg(presentation)?;
            let pres: Presentation =
                serde_json::from_str(&text).or_else(|e| usage(format!("presentation JSON: {e}")))?;
            if from > to {
                return usage("--from must not exceed --to");
            }
            let levels = (*from..=*to).map(|n| instantiate_coker(&pres, n, *p)).collect::<Result<Vec<_>, _>>()?;
            let period_of = |f: &dyn Fn(&stablerep::FiLevel) -> usize| -> Value {
                let seq: Vec<i64> = levels.iter().map(|l| f(l) as i64).collect();
                match detect_period(&seq, *p) {
                    Ok(found) => json!(found),
                    Err(_) => Value::Null,
                }
            };
            let rows = levels
                .iter()
                .map(|l| vec![l.n.to_string(), l.dim.to_string(), l.invariants.to_string(), l.coinvariants.to_string()])
                .collect();
            Ok(Table::new(
                json!({
                    "p": p,
                    "levels": levels,
                    "invariants_period": period_of(&|l| l.invariants),
                    "coinvariants_period": period_of(&|l| l.coinvariants),
                }),
                vec!["n", "dim", "invariants", "coinvariants"],
                rows,
            ))
        }
        Command::Period { values, p } => {
            let found = detect_period(&values.0, *p)?;
            let rows = match found {
                Some(f) => vec![vec![f.preperiod.to_string(), f.period.to_string()]],
                None => vec![],
            };
            let json = match found {
                Some(f) => json!({"found": true, "preperiod": f.preperiod, "period": f.period}),
                None => json!({"found": false, "message": "no period found"}),
            };
            Ok(Table::new(json, vec!["preperiod", "period"], rows))
        }
    }
}
