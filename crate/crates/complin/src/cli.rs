//! Command-line front end.
//!
//! Exit codes: 0 success, 1 validation failure (instance or plan), 2 a
//! consistency witness was found, 3 an enumeration budget was exceeded,
//! 4 I/O or parse failure.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::emit::{emit_compact, emit_standard, size_report};
use crate::instance::{parse_instance, BqpInstance, Substitution};
use crate::linearize::{
    check_conditions, construct_sets, Condition, ConditionReport, LinearizationPlan,
};
use crate::milp::{
    build_min_milp, check_tu_structure_with, solve_exact, MilpSolution, TuReport,
    DEFAULT_SOLVE_BUDGET, DEFAULT_TU_SAMPLES,
};
use crate::verify::{
    check_consistency_with_caps, liberti_plan, ConsistencyReport, DEFAULT_CAP_X, DEFAULT_CAP_Y,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_WITNESS: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Parser)]
#[command(
    name = "complin",
    version,
    about = "Compact linearization of binary quadratic programs under assignment constraints"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a covering plan and emit the compact equation model
    Linearize(CommonArgs),
    /// Minimize plan size exactly and report the TU structure of the model
    Minimize(CommonArgs),
    /// Verify plan consistency by exhaustive enumeration
    Verify(CommonArgs),
    /// Compare compact and standard linearization sizes
    Compare(CommonArgs),
    /// Write the LP file for a plan (computed, loaded, or standard)
    Emit(EmitArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Instance JSON file
    input: PathBuf,
    /// Prefix for output files (e.g. PREFIX.plan.json, PREFIX.lp)
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
    /// Objective weights w_eqn,w_var for size minimization
    #[arg(long, value_parser = parse_weights, default_value = "1,1")]
    weights: (f64, f64),
    /// Fold diagonal and same-set products away before processing
    #[arg(long)]
    simplify_trivial: bool,
    /// Emit models even when the plan fails the covering conditions
    #[arg(long)]
    unsafe_emit: bool,
    /// Build the plan with the original 2007 recipe instead of the closure
    #[arg(long)]
    liberti_mode: bool,
    /// Seed for sampled determinant checks
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Cap on enumerated feasible x-vectors
    #[arg(long, default_value_t = DEFAULT_CAP_X)]
    cap_x: usize,
    /// Cap on y-candidates per x-vector
    #[arg(long, default_value_t = DEFAULT_CAP_Y)]
    cap_y: u64,
    /// Machine-readable JSON output
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct EmitArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Plan JSON file; defaults to computing one from the instance
    #[arg(long)]
    plan: Option<PathBuf>,
    /// Emit the standard three-inequality linearization instead
    #[arg(long)]
    standard: bool,
}

fn parse_weights(s: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err("expected two comma-separated values: w_eqn,w_var".into());
    }
    let w_eqn: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| format!("invalid weight {:?}", parts[0]))?;
    let w_var: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| format!("invalid weight {:?}", parts[1]))?;
    if w_eqn < 0.0 || w_var < 0.0 {
        return Err("weights must be nonnegative".into());
    }
    Ok((w_eqn, w_var))
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return EXIT_OK;
            }
            eprint!("{e}");
            return EXIT_IO;
        }
    };
    match cli.command {
        Command::Linearize(args) => with_instance(&args, cmd_linearize),
        Command::Minimize(args) => with_instance(&args, cmd_minimize),
        Command::Verify(args) => with_instance(&args, cmd_verify),
        Command::Compare(args) => with_instance(&args, cmd_compare),
        Command::Emit(args) => with_instance(&args.common, |inst, subs, common| {
            cmd_emit(inst, subs, common, &args)
        }),
    }
}

/// Loads, parses, validates and optionally simplifies the instance, then
/// hands it to the command body.
fn with_instance<F>(args: &CommonArgs, body: F) -> i32
where
    F: FnOnce(&BqpInstance, &[Substitution], &CommonArgs) -> i32,
{
    let text = match fs::read_to_string(&args.input) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.input.display());
            return EXIT_IO;
        }
    };
    let inst = match parse_instance(&text) {
        Ok(inst) => inst,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_IO;
        }
    };
    let validation = inst.validate();
    if !validation.ok {
        if args.json {
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({ "validation": validation }))
                    .expect("report serialization cannot fail")
            );
        } else {
            for v in &validation.violations {
                eprintln!("validation: {}", v.message);
            }
        }
        return EXIT_VALIDATION;
    }
    let (inst, subs) = if args.simplify_trivial {
        inst.preprocess_trivial()
    } else {
        (inst, Vec::new())
    };
    body(&inst, &subs, args)
}

fn build_plan(inst: &BqpInstance, args: &CommonArgs) -> Result<LinearizationPlan, i32> {
    if args.liberti_mode {
        Ok(liberti_plan(inst))
    } else {
        construct_sets(inst).map_err(|e| {
            eprintln!("error: {e}");
            EXIT_VALIDATION
        })
    }
}

fn condition_lines(report: &ConditionReport) -> Vec<String> {
    let mut lines = Vec::new();
    for v in &report.violations {
        let which = match v.condition {
            Condition::One => "1",
            Condition::Two => "2",
        };
        lines.push(format!(
            "pair ({},{}) fails condition {which}",
            v.pair.i(),
            v.pair.j()
        ));
    }
    for p in &report.uncovered_products {
        lines.push(format!("product ({},{}) is not in F", p.i(), p.j()));
    }
    for p in &report.missing_image_pairs {
        lines.push(format!(
            "pair ({},{}) is induced by the B sets but missing from F",
            p.i(),
            p.j()
        ));
    }
    for p in &report.extra_pairs {
        lines.push(format!(
            "pair ({},{}) is in F but not induced by the B sets",
            p.i(),
            p.j()
        ));
    }
    lines
}

fn print_conditions(report: &ConditionReport) {
    if report.ok {
        println!("conditions: ok");
    } else {
        let lines = condition_lines(report);
        println!("conditions: {} violation(s)", lines.len());
        for line in lines {
            println!("  {line}");
        }
    }
}

fn print_substitutions(subs: &[Substitution]) {
    if !subs.is_empty() {
        println!("simplified {} trivial product(s)", subs.len());
        for s in subs {
            println!("  {s}");
        }
    }
}

fn plan_json_value(plan: &LinearizationPlan) -> serde_json::Value {
    serde_json::from_str(&plan.to_json()).expect("plan JSON is valid")
}

fn write_file(path: &Path, contents: &str) -> Result<(), i32> {
    fs::write(path, contents).map_err(|e| {
        eprintln!("error: cannot write {}: {e}", path.display());
        EXIT_IO
    })
}

fn prefixed(prefix: &Path, suffix: &str) -> PathBuf {
    PathBuf::from(format!("{}.{suffix}", prefix.display()))
}

fn cmd_linearize(inst: &BqpInstance, subs: &[Substitution], args: &CommonArgs) -> i32 {
    let plan = match build_plan(inst, args) {
        Ok(plan) => plan,
        Err(code) => return code,
    };
    let conditions = check_conditions(inst, &plan);
    let model = match emit_compact(inst, &plan, args.unsafe_emit) {
        Ok(model) => model,
        Err(_) => {
            print_conditions(&conditions);
            eprintln!(
                "error: plan fails the covering conditions; rerun with --unsafe-emit to emit anyway"
            );
            return EXIT_VALIDATION;
        }
    };
    let size = size_report(inst, &plan);
    let lp_text = model.to_lp_string();

    if args.json {
        let mut doc = json!({
            "summary": {
                "sum_b": plan.sum_b(),
                "f": plan.f_len(),
                "conditions_ok": conditions.ok,
            },
            "conditions": conditions,
            "plan": plan_json_value(&plan),
            "size": size,
            "substitutions": subs,
        });
        if let Some(prefix) = &args.output {
            let plan_path = prefixed(prefix, "plan.json");
            let lp_path = prefixed(prefix, "lp");
            let size_path = prefixed(prefix, "size.json");
            for (path, contents) in [
                (&plan_path, plan.to_json()),
                (&lp_path, lp_text.clone()),
                (&size_path, size.to_json()),
            ] {
                if let Err(code) = write_file(path, &contents) {
                    return code;
                }
            }
            doc["files"] = json!({
                "plan": plan_path.display().to_string(),
                "lp": lp_path.display().to_string(),
                "size": size_path.display().to_string(),
            });
        } else {
            doc["lp"] = json!(lp_text);
        }
        println!(
            "{}",
            serde_json::to_string_pretty(&doc).expect("report serialization cannot fail")
        );
        return EXIT_OK;
    }

    print_substitutions(subs);
    println!("plan: sum |B_k| = {}, |F| = {}", plan.sum_b(), plan.f_len());
    print_conditions(&conditions);
    if let Some(prefix) = &args.output {
        for (suffix, contents) in [
            ("plan.json", plan.to_json()),
            ("lp", lp_text),
            ("size.json", size.to_json()),
        ] {
            let path = prefixed(prefix, suffix);
            if let Err(code) = write_file(&path, &contents) {
                return code;
            }
            println!("wrote {}", path.display());
        }
        print!("{}", size.to_table());
    } else {
        print!("{}", size.to_table());
        print!("{lp_text}");
    }
    EXIT_OK
}

fn tu_json(report: &TuReport) -> serde_json::Value {
    json!({
        "structural_ok": report.structural_ok,
        "rows_checked": report.rows_checked,
        "sampled_determinants_ok": report.sampled_determinants_ok,
        "counterexample": report.counterexample,
    })
}

fn solution_json(sol: &MilpSolution) -> serde_json::Value {
    json!({
        "objective": sol.objective_value,
        "optimal": sol.optimal,
        "nodes": sol.nodes_or_candidates_explored,
        "plan": plan_json_value(&sol.plan),
    })
}

fn cmd_minimize(inst: &BqpInstance, subs: &[Substitution], args: &CommonArgs) -> i32 {
    let (w_eqn, w_var) = args.weights;
    let model = build_min_milp(inst, w_eqn, w_var);
    let sol = match solve_exact(&model, DEFAULT_SOLVE_BUDGET) {
        Ok(sol) => sol,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_VALIDATION;
        }
    };
    let tu = check_tu_structure_with(&model, args.seed, DEFAULT_TU_SAMPLES);
    let lp_text = model.to_lp_string();

    if args.json {
        let mut doc = json!({
            "milp": {
                "z_vars": model.z_vars.len(),
                "f_vars": model.f_vars.len(),
                "rows": model.rows.len(),
                "weights": [w_eqn, w_var],
            },
            "solution": solution_json(&sol),
            "tu": tu_json(&tu),
            "substitutions": subs,
        });
        if let Some(prefix) = &args.output {
            let lp_path = prefixed(prefix, "milp.lp");
            let plan_path = prefixed(prefix, "plan.json");
            for (path, contents) in [(&lp_path, lp_text), (&plan_path, sol.plan.to_json())] {
                if let Err(code) = write_file(path, &contents) {
                    return code;
                }
            }
            doc["files"] = json!({
                "milp_lp": lp_path.display().to_string(),
                "plan": plan_path.display().to_string(),
            });
        }
        println!(
            "{}",
            serde_json::to_string_pretty(&doc).expect("report serialization cannot fail")
        );
    } else {
        print_substitutions(subs);
        println!(
            "milp: {} z vars, {} f vars, {} rows, weights ({w_eqn}, {w_var})",
            model.z_vars.len(),
            model.f_vars.len(),
            model.rows.len()
        );
        println!(
            "optimal: {} (objective {}, {} nodes)",
            sol.optimal, sol.objective_value, sol.nodes_or_candidates_explored
        );
        println!(
            "plan: sum |B_k| = {}, |F| = {}",
            sol.plan.sum_b(),
            sol.plan.f_len()
        );
        println!(
            "tu: structural {}, sampled determinants {} ({} rows checked)",
            if tu.structural_ok { "ok" } else { "violated" },
            if tu.sampled_determinants_ok { "ok" } else { "violated" },
            tu.rows_checked
        );
        if let Some(c) = &tu.counterexample {
            println!("  {c}");
        }
        if let Some(prefix) = &args.output {
            for (suffix, contents) in [("milp.lp", lp_text), ("plan.json", sol.plan.to_json())] {
                let path = prefixed(prefix, suffix);
                if let Err(code) = write_file(&path, &contents) {
                    return code;
                }
                println!("wrote {}", path.display());
            }
        }
    }
    if sol.optimal {
        EXIT_OK
    } else {
        EXIT_BUDGET
    }
}

fn consistency_json(report: &ConsistencyReport) -> serde_json::Value {
    json!({
        "consistent": report.consistent,
        "checked": report.x_assignments_checked,
        "exhaustive": report.exhaustive,
        "witness": report.witness.as_ref().map(|w| w.to_json_value()),
    })
}

fn cmd_verify(inst: &BqpInstance, subs: &[Substitution], args: &CommonArgs) -> i32 {
    let plan = match build_plan(inst, args) {
        Ok(plan) => plan,
        Err(code) => return code,
    };
    let conditions = check_conditions(inst, &plan);
    let report = check_consistency_with_caps(inst, &plan, args.cap_x, args.cap_y);

    if args.json {
        let doc = json!({
            "conditions": conditions,
            "report": consistency_json(&report),
            "substitutions": subs,
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&doc).expect("report serialization cannot fail")
        );
    } else {
        print_substitutions(subs);
        print_conditions(&conditions);
        if report.consistent {
            println!(
                "consistent: true (checked {} assignment(s){})",
                report.x_assignments_checked,
                if report.exhaustive {
                    ""
                } else {
                    ", not exhaustively verified"
                }
            );
        } else if let Some(w) = &report.witness {
            println!("consistent: false");
            let xs: Vec<String> = w.x.iter().map(|v| v.to_string()).collect();
            println!(
                "witness: x = ({}), pair ({},{}), bound {}",
                xs.join(","),
                w.violated_pair.i(),
                w.violated_pair.j(),
                w.violated_bound
            );
            for (p, v) in &w.y {
                println!("  y{}_{} = {v}", p.i(), p.j());
            }
        } else {
            println!("consistent: false (product vector violates the plan equations)");
        }
    }
    if let Some(prefix) = &args.output {
        let path = prefixed(prefix, "verify.json");
        let doc = json!({
            "conditions": conditions,
            "report": consistency_json(&report),
        });
        let contents =
            serde_json::to_string_pretty(&doc).expect("report serialization cannot fail");
        if let Err(code) = write_file(&path, &contents) {
            return code;
        }
        if !args.json {
            println!("wrote {}", path.display());
        }
    }
    if report.witness.is_some() {
        EXIT_WITNESS
    } else if !report.consistent {
        EXIT_VALIDATION
    } else if !report.exhaustive {
        EXIT_BUDGET
    } else {
        EXIT_OK
    }
}

fn cmd_compare(inst: &BqpInstance, subs: &[Substitution], args: &CommonArgs) -> i32 {
    let plan = match build_plan(inst, args) {
        Ok(plan) => plan,
        Err(code) => return code,
    };
    let size = size_report(inst, &plan);
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({ "size": size, "substitutions": subs }))
                .expect("report serialization cannot fail")
        );
    } else {
        print_substitutions(subs);
        print!("{}", size.to_table());
    }
    if let Some(prefix) = &args.output {
        let path = prefixed(prefix, "size.json");
        if let Err(code) = write_file(&path, &size.to_json()) {
            return code;
        }
        if !args.json {
            println!("wrote {}", path.display());
        }
    }
    EXIT_OK
}

fn cmd_emit(inst: &BqpInstance, subs: &[Substitution], args: &CommonArgs, emit: &EmitArgs) -> i32 {
    let model = if emit.standard {
        emit_standard(inst)
    } else {
        let plan = if let Some(path) = &emit.plan {
            let text = match fs::read_to_string(path) {
                Ok(text) => text,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", path.display());
                    return EXIT_IO;
                }
            };
            let plan = match LinearizationPlan::from_json(&text) {
                Ok(plan) => plan,
                Err(e) => {
                    eprintln!("error: {e}");
                    return EXIT_IO;
                }
            };
            if let Err(e) = plan.validate_against(inst) {
                eprintln!("error: {e}");
                return EXIT_VALIDATION;
            }
            plan
        } else {
            match build_plan(inst, args) {
                Ok(plan) => plan,
                Err(code) => return code,
            }
        };
        match emit_compact(inst, &plan, args.unsafe_emit) {
            Ok(model) => model,
            Err(_) => {
                print_conditions(&check_conditions(inst, &plan));
                eprintln!(
                    "error: plan fails the covering conditions; rerun with --unsafe-emit to emit anyway"
                );
                return EXIT_VALIDATION;
            }
        }
    };
    let lp_text = model.to_lp_string();
    if args.json {
        let mut doc = json!({ "substitutions": subs });
        if let Some(prefix) = &args.output {
            let path = prefixed(prefix, "lp");
            if let Err(code) = write_file(&path, &lp_text) {
                return code;
            }
            doc["files"] = json!({ "lp": path.display().to_string() });
        } else {
            doc["lp"] = json!(lp_text);
        }
        println!(
            "{}",
            serde_json::to_string_pretty(&doc).expect("report serialization cannot fail")
        );
    } else if let Some(prefix) = &args.output {
        print_substitutions(subs);
        let path = prefixed(prefix, "lp");
        if let Err(code) = write_file(&path, &lp_text) {
            return code;
        }
        println!("wrote {}", path.display());
    } else {
        print!("{lp_text}");
    }
    EXIT_OK
}
