use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use num_bigint::BigUint;
use serde_json::{json, Value};
use termirial_core::fractal::{self, Format};
use termirial_core::loopnest::{analyze, parse, simulate};
use termirial_core::oracle::{decompose_by_leading, nested_sum, subsets};
use termirial_core::{
    convolution_terms, pascal_check, termirial, termirial_p, termirial_p_binomial, Natural, Order,
    TermirialExpr, DEFAULT_BUDGET,
};

use crate::output::{CliError, Outcome, Range, EXIT_GUARD, EXIT_IDENTITY_FAILED};
use crate::{Cli, Command, FigureFormat, Identity};

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Eval { n, p, oracle } => eval(cli, *n, *p, *oracle),
        Command::Check {
            identity,
            n,
            m,
            p,
            verbose,
        } => check(cli, *identity, *n, *m, *p, *verbose),
        Command::Enum { n, p, list } => enumerate(cli, *n, *p, *list),
        Command::Loops { file, n, simulate } => loops(cli, file.as_deref(), *n, *simulate),
        Command::Fractal {
            n,
            p,
            format,
            report,
            out,
        } => figure(cli, *n, *p, *format, *report, out.as_deref()),
    }
}

fn num(cli: &Cli, v: &Natural) -> String {
    let s = v.to_string();
    if cli.pretty {
        crate::output::group_digits(&s)
    } else {
        s
    }
}

fn order(cli: &Cli, p: i64) -> Result<Order, CliError> {
    if p > cli.max_order {
        return Err(CliError::usage(format!(
            "order {p} exceeds --max-order {}",
            cli.max_order
        )));
    }
    Order::new(p).map_err(|e| CliError::usage(e.to_string()))
}

fn eval(cli: &Cli, n: u64, p: i64, oracle: bool) -> Outcome {
    let mut out = Outcome::new("eval");
    out.input("n", n);
    out.input("p", p);
    out.input("oracle", oracle);
    let order = match order(cli, p) {
        Ok(o) => o,
        Err(e) => return out.fail(e),
    };

    let expr = TermirialExpr::new(n, order);
    let (top, bottom) = &expr.binomial_form;
    let mut result = json!({
        "value": expr.value.to_string(),
        "binomial": { "top": top.to_string(), "bottom": bottom.to_string() },
    });
    let mut text = format!(
        "{}\n  termirial: {n}^({p})\n  binomial:  C({top}, {bottom})\n",
        num(cli, &expr.value)
    );

    if oracle {
        let budget = cli.budget.unwrap_or(DEFAULT_BUDGET);
        match nested_sum(n, order, budget) {
            Ok(v) => {
                let agrees = v == expr.value;
                let _ = writeln!(
                    text,
                    "  oracle:    {} ({})",
                    num(cli, &v),
                    if agrees { "agrees" } else { "DISAGREES" }
                );
                result["oracle"] = Value::String(v.to_string());
                out.checks.push(("oracle".into(), agrees));
                if !agrees {
                    out.exit = EXIT_IDENTITY_FAILED;
                }
            }
            Err(e) => return out.fail(e),
        }
    }
    out.result = result;
    out.text = text;
    out
}

struct Instance {
    name: String,
    pass: bool,
    detail: String,
}

fn joined(values: &[Natural]) -> String {
    values
        .iter()
        .map(Natural::to_string)
        .collect::<Vec<_>>()
        .join(" + ")
}

fn check_instance(identity: Identity, n: u64, m: u64, p: Order) -> Instance {
    match identity {
        Identity::Pascal => {
            let (lhs, rhs) = pascal_check(n, p);
            Instance {
                name: format!("pascal(n={n}, p={p})"),
                pass: lhs == rhs,
                detail: format!("(n+1)^(p) + n^(p+1) = {lhs}, (n+1)^(p+1) = {rhs}"),
            }
        }
        Identity::Newton => {
            let terms = convolution_terms(n, m, p);
            let sum: Natural = terms.iter().sum();
            let rhs = termirial_p(n + m, p);
            Instance {
                name: format!("newton(n={n}, m={m}, p={p})"),
                pass: sum == rhs,
                detail: format!("{rhs} = {} = {sum}", joined(&terms)),
            }
        }
        Identity::Split1 => {
            let lhs = termirial(n + m);
            let parts = [termirial(n), Natural::from(n) * m, termirial(m)];
            let rhs: Natural = parts.iter().sum();
            Instance {
                name: format!("split1(n={n}, m={m})"),
                pass: lhs == rhs,
                detail: format!("{lhs} = {}", joined(&parts)),
            }
        }
        Identity::Split2 => {
            let two = Order::new(2).expect("valid");
            let lhs = termirial_p(n + m, two);
            let parts = [
                termirial_p(n, two),
                Natural::from(n) * termirial(m),
                Natural::from(m) * termirial(n),
                termirial_p(m, two),
            ];
            let rhs: Natural = parts.iter().sum();
            Instance {
                name: format!("split2(n={n}, m={m})"),
                pass: lhs == rhs,
                detail: format!("{lhs} = {}", joined(&parts)),
            }
        }
        Identity::Recurrence => {
            let lower = p.pred().expect("recurrence sweeps p >= 0");
            let lhs = termirial_p(n, p);
            let rhs: Natural = (1..=n).map(|k| termirial_p(k, lower)).sum();
            Instance {
                name: format!("recurrence(n={n}, p={p})"),
                pass: lhs == rhs,
                detail: format!("n^(p) = {lhs}, sum of k^(p-1) = {rhs}"),
            }
        }
        Identity::Closedform => {
            let a = termirial_p(n, p);
            let b = termirial_p_binomial(n, p);
            Instance {
                name: format!("closedform(n={n}, p={p})"),
                pass: a == b,
                detail: format!("product {a}, binomial {b}"),
            }
        }
    }
}

fn check(cli: &Cli, identity: Identity, n: Range, m: Range, p: Range, verbose: bool) -> Outcome {
    let mut out = Outcome::new("check");
    let ident_name = format!("{identity:?}").to_lowercase();
    out.input("identity", ident_name.clone());

    let uses_m = matches!(
        identity,
        Identity::Newton | Identity::Split1 | Identity::Split2
    );
    let uses_p = !matches!(identity, Identity::Split1 | Identity::Split2);
    out.input("n", n.to_string());
    if uses_m {
        out.input("m", m.to_string());
    }
    if uses_p {
        out.input("p", p.to_string());
    }

    if n.start < 0 || m.start < 0 {
        return out.fail(CliError::usage("n and m must be non-negative"));
    }
    if uses_p {
        if let Err(e) = order(cli, p.start).and(order(cli, p.end)) {
            return out.fail(e);
        }
    }
    let p = if identity == Identity::Recurrence {
        Range {
            start: p.start.max(0),
            end: p.end,
        }
    } else {
        p
    };
    let m_axis = if uses_m {
        m
    } else {
        Range { start: 0, end: 0 }
    };
    let p_axis = if uses_p {
        p
    } else {
        Range { start: 0, end: 0 }
    };
    let total = n
        .len()
        .saturating_mul(m_axis.len())
        .saturating_mul(p_axis.len());
    if total > cli.max_sweep {
        return out.fail(CliError {
            code: EXIT_GUARD,
            kind: "SizeLimit",
            message: format!(
                "sweep of {total} instances exceeds --max-sweep {}",
                cli.max_sweep
            ),
            position: None,
        });
    }

    let mut text = String::new();
    let mut failed = 0u64;
    for nv in n.iter() {
        for mv in m_axis.iter() {
            for pv in p_axis.iter() {
                let inst = check_instance(
                    identity,
                    nv as u64,
                    mv as u64,
                    Order::new(pv).expect("validated"),
                );
                if !inst.pass {
                    failed += 1;
                }
                if verbose || total == 1 || !inst.pass {
                    let verdict = if inst.pass { "pass" } else { "FAIL" };
                    let _ = writeln!(text, "{}: {}, {verdict}", inst.name, inst.detail);
                }
                out.checks.push((inst.name, inst.pass));
            }
        }
    }
    let _ = writeln!(
        text,
        "{ident_name}: {} of {total} instances pass",
        total - failed
    );
    out.result = json!({ "identity": ident_name, "total": total, "passed": total - failed, "failed": failed });
    out.text = text;
    if failed > 0 {
        out.exit = EXIT_IDENTITY_FAILED;
    }
    out
}

fn enumerate(cli: &Cli, n: u64, p: u64, list: bool) -> Outcome {
    let mut out = Outcome::new("enum");
    out.input("n", n);
    out.input("p", p);
    out.input("list", list);
    if p == 0 || p > n {
        return out.fail(CliError::usage(format!(
            "need 1 <= p <= n, got n={n} p={p}"
        )));
    }
    let budget = cli.budget.unwrap_or(DEFAULT_BUDGET);
    let decomposition = match decompose_by_leading(n, p, budget) {
        Ok(d) => d,
        Err(e) => return out.fail(e),
    };

    let mut text = String::new();
    let mut result = json!({});
    if list {
        let all = match subsets(n, p, budget) {
            Ok(s) => s,
            Err(e) => return out.fail(e),
        };
        for s in &all {
            let items: Vec<String> = s.iter().map(u64::to_string).collect();
            let _ = writeln!(text, "{{{}}}", items.join(", "));
        }
        result["subsets"] = json!(all);
    }
    let _ = writeln!(text, "{decomposition}");
    let mut groups = Vec::new();
    for (g, (k, ord)) in decomposition
        .groups
        .iter()
        .zip(decomposition.termirial_reading())
    {
        let _ = writeln!(text, "  leading {}: {} = {k}^({ord})", g.leading, g.count);
        groups.push(json!({ "leading": g.leading, "count": g.count, "termirial": { "n": k, "p": ord.get() } }));
    }
    let (k, ord) = decomposition.total_reading();
    let total = decomposition.total();
    let _ = writeln!(text, "  total: {total} = {k}^({ord})");
    result["groups"] = json!(groups);
    result["counts"] = json!(decomposition.counts());
    result["total"] = json!(total);
    result["total_termirial"] = json!({ "n": k, "p": ord.get() });
    out.result = result;
    out.text = text;
    out
}

fn loops(cli: &Cli, file: Option<&Path>, n: Option<u64>, run_sim: bool) -> Outcome {
    let mut out = Outcome::new("loops");
    let (name, source) = match file {
        Some(path) if path != Path::new("-") => {
            out.input("file", path.display().to_string());
            match std::fs::read_to_string(path) {
                Ok(s) => (path.display().to_string(), s),
                Err(e) => {
                    return out.fail(CliError::usage(format!("{}: {e}", path.display())));
                }
            }
        }
        _ => {
            out.input("file", "-");
            let mut s = String::new();
            if let Err(e) = std::io::stdin().read_to_string(&mut s) {
                return out.fail(CliError::usage(format!("<stdin>: {e}")));
            }
            ("<stdin>".to_string(), s)
        }
    };
    if let Some(n) = n {
        out.input("n", n);
    }
    out.input("simulate", run_sim);

    let mut prog = match parse(&source) {
        Ok(p) => p,
        Err(e) => {
            let mut err = CliError::from(e);
            err.message = format!("{name}:{}", err.message);
            return out.fail(err);
        }
    };
    if n.is_some() {
        prog.param_value = n;
    }
    let analysis = analyze(&prog);
    let cf = &analysis.closed_form;

    let mut text = format!(
        "depth: {}\nclosed form: {cf}\ncomplexity: Θ({}^{})\n",
        analysis.depth, cf.n_symbol, analysis.theta_exponent
    );
    let mut result = json!({
        "depth": analysis.depth,
        "closed_form": {
            "termirial": cf.termirial_notation(),
            "binomial": cf.binomial_notation(),
            "order": cf.order.get(),
        },
        "theta_exponent": analysis.theta_exponent,
        "exact_count": analysis.exact_count.as_ref().map(Natural::to_string),
    });
    if let (Some(count), Some(nv)) = (&analysis.exact_count, prog.param_value) {
        let _ = writeln!(text, "count: {} ({} = {nv})", num(cli, count), cf.n_symbol);
    }

    if run_sim {
        let Some(nv) = prog.param_value else {
            out.result = result;
            out.text = text;
            return out.fail(CliError::usage(
                "--simulate needs a value for the bound (file or --n)",
            ));
        };
        let budget = cli.budget.unwrap_or(DEFAULT_BUDGET);
        match simulate(&prog, nv, budget) {
            Ok(sim) => {
                let agrees = Some(&sim) == analysis.exact_count.as_ref();
                let _ = writeln!(
                    text,
                    "simulated: {} ({})",
                    num(cli, &sim),
                    if agrees { "agrees" } else { "DISAGREES" }
                );
                result["simulated"] = Value::String(sim.to_string());
                out.checks.push(("simulate".into(), agrees));
                if !agrees {
                    out.exit = EXIT_IDENTITY_FAILED;
                }
            }
            Err(e) => {
                out.result = result;
                out.text = text;
                return out.fail(e);
            }
        }
    }
    out.result = result;
    out.text = text;
    out
}

fn figure(
    cli: &Cli,
    n: u64,
    p: u32,
    format: FigureFormat,
    report: bool,
    dest: Option<&Path>,
) -> Outcome {
    let mut out = Outcome::new("fractal");
    out.input("n", n);
    out.input("p", p);
    out.input("format", format!("{format:?}").to_lowercase());
    out.input("report", report);
    if let Some(d) = dest {
        out.input("out", d.display().to_string());
    }
    if report && p == 0 {
        return out.fail(CliError::usage("--report needs p >= 1"));
    }
    let budget = cli.budget.unwrap_or(fractal::DEFAULT_CELL_BUDGET);
    let fig = match fractal::build(n, p, budget) {
        Ok(f) => f,
        Err(e) => return out.fail(e),
    };
    let rendered = fig.render(match format {
        FigureFormat::Svg => Format::Svg,
        FigureFormat::Ascii => Format::Ascii,
    });
    let (w, h) = fig.extent();
    let mut result = json!({
        "cells": fig.count(),
        "width": w,
        "height": h,
        "cell_side": fig.cell_side.to_string(),
    });

    let mut text = String::new();
    match dest {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &rendered) {
                return out.fail(CliError::usage(format!("{}: {e}", path.display())));
            }
        }
        None => {
            text.push_str(&rendered);
            result["figure"] = Value::String(rendered);
        }
    }

    if report {
        let rep = match fractal::surface_report_from_figures(n, p, budget) {
            Ok(r) => r,
            Err(e) => return out.fail(e),
        };
        let _ = writeln!(
            text,
            "grey cells: {}",
            num(cli, &BigUint::from(fig.count()))
        );
        let _ = writeln!(text, "surface ratio S_{}/S_{}: {}", p - 1, p, rep.ratio);
        let _ = writeln!(text, "closed form 4(p+1)/(n+p): {}", rep.closed_form);
        let _ = writeln!(text, "dimension estimate: {}", rep.dimension_estimate);
        result["report"] = json!({
            "ratio": rep.ratio.to_string(),
            "closed_form": rep.closed_form.to_string(),
            "dimension_estimate": rep.dimension_estimate,
        });
        out.checks.push(("ratio_closed_form".into(), rep.agrees()));
        if !rep.agrees() {
            out.exit = EXIT_IDENTITY_FAILED;
        }
    }
    out.result = result;
    out.text = text;
    out
}
