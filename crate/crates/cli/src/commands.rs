use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use safestab::blend::compatible;
use safestab::feasibility::feasible_set;
use safestab::plant::State;
use safestab::priority::mode;
use safestab::scenario::find_x0 as search;
use safestab::sim::{format_real, simulate as run, ControllerLaw, ControllerSpec, SimReport};

use crate::config::RunConfig;
use crate::{CliError, ControllerArgs, EvalArgs, FileArgs, SimulateArgs};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATION: u8 = 4;
pub const EXIT_NOT_FOUND: u8 = 5;
pub const EXIT_NOT_CONVERGED: u8 = 6;

fn apply(cfg: &mut RunConfig, args: &ControllerArgs) {
    let c = &mut cfg.controller;
    if let Some(v) = &args.law {
        c.law = v.clone();
    }
    if let Some(v) = &args.formula {
        c.formula = v.clone();
    }
    if let Some(v) = &args.lambda {
        c.lambda = v.clone();
    }
    if let Some(v) = args.eta {
        c.eta = v;
    }
    if let Some(v) = args.c {
        c.c = v;
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path).map(BufWriter::new).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn bool01(b: bool) -> u8 {
    u8::from(b)
}

fn pattern(report: &SimReport) -> String {
    let p: Vec<String> = report.mode_pattern().iter().map(u8::to_string).collect();
    p.join(",")
}

pub fn eval(args: &EvalArgs) -> Result<u8, CliError> {
    let mut cfg = RunConfig::default();
    cfg.system.name = args.system.clone();
    apply(&mut cfg, &args.controller);
    let bundle = cfg.bundle()?;
    let ctrl = cfg.controller()?;
    let x = State::new(args.x.clone())?;
    if x.dim() != bundle.dim() {
        return Err(CliError::Usage(format!(
            "--x has {} components, system `{}` needs {}",
            x.dim(),
            bundle.label,
            bundle.dim()
        )));
    }
    let d = bundle.lie_data(&x)?;
    let set = feasible_set(&d);
    let (lo, hi) = set.bounds().unwrap_or((f64::NAN, f64::NAN));

    let mut out = vec![
        ("system".to_string(), bundle.label.clone()),
        ("x".to_string(), x.as_slice().iter().map(|v| format_real(*v)).collect::<Vec<_>>().join(",")),
        ("V".to_string(), format_real(bundle.clf.value(x.as_slice())?)),
        ("h".to_string(), format_real(bundle.cbf.value(x.as_slice())?)),
        ("a0".to_string(), format_real(d.a0)),
        ("b0".to_string(), format_real(d.b0)),
        ("a1".to_string(), format_real(d.a1)),
        ("b1".to_string(), format_real(d.b1)),
        ("feasible_kind".to_string(), set.kind().to_string()),
        ("feasible_lo".to_string(), format_real(lo)),
        ("feasible_hi".to_string(), format_real(hi)),
        ("compatible".to_string(), bool01(compatible(&d)).to_string()),
        ("mode".to_string(), mode(&d).to_string()),
    ];
    for law in ControllerLaw::ALL {
        let u = ControllerSpec { law, ..ctrl }.evaluate(&d, x.as_slice());
        let v = u.map_or_else(|_| "none".to_string(), format_real);
        out.push((format!("u_{}", law.name()), v));
    }
    let u = ctrl.evaluate(&d, x.as_slice())?;
    out.push(("law".to_string(), ctrl.law.name().to_string()));
    out.push(("u".to_string(), format_real(u)));

    let stdout = std::io::stdout();
    let mut w = stdout.lock();
    for (k, v) in out {
        let _ = writeln!(w, "{k}={v}");
    }
    Ok(EXIT_OK)
}

pub fn simulate(args: &SimulateArgs) -> Result<u8, CliError> {
    let mut cfg = RunConfig::load(&args.config)?;
    apply(&mut cfg, &args.controller);
    if let Some(x) = &args.x {
        cfg.simulation.x0 = x.clone();
    }
    if let Some(dt) = args.dt {
        cfg.simulation.dt = dt;
    }
    if let Some(t) = args.t_end {
        cfg.simulation.t_end = t;
    }
    if let Some(p) = &args.out {
        cfg.simulation.output = p.clone();
    }
    let bundle = cfg.bundle()?;
    let ctrl = cfg.controller()?;
    if cfg.simulation.x0.is_empty() {
        return Err(CliError::Usage("simulation.x0 is not set".into()));
    }
    let x0 = State::new(cfg.simulation.x0.clone())?;
    let (traj, report) = run(&bundle, &ctrl, &x0, &cfg.sim())?;

    let path: PathBuf = cfg.simulation.output.clone();
    let mut w = create(&path)?;
    traj.write_csv(&mut w).map_err(io_err(&path))?;
    w.flush().map_err(io_err(&path))?;

    let transitions: Vec<String> = report
        .mode_transitions
        .iter()
        .map(|(t, m)| format!("{}:{m}", format_real(*t)))
        .collect();
    println!("law={}", ctrl.law.name());
    println!("min_h={}", format_real(report.min_h));
    println!("safety_violated={}", bool01(report.safety_violated));
    println!("final_state_norm={}", format_real(report.final_state_norm));
    println!("converged={}", bool01(report.converged));
    println!("stopped_early={}", bool01(report.stopped_early));
    match report.safety_abort_time {
        Some(t) => println!("safety_abort_time={}", format_real(t)),
        None => println!("safety_abort_time=none"),
    }
    println!("mode_transitions={}", transitions.join(";"));
    println!("mode_pattern={}", pattern(&report));
    println!("samples={}", report.samples);
    println!("csv={}", path.display());

    Ok(if report.safety_violated {
        EXIT_VIOLATION
    } else if report.converged {
        EXIT_OK
    } else {
        EXIT_NOT_CONVERGED
    })
}

pub fn sweep(args: &FileArgs) -> Result<u8, CliError> {
    let cfg = RunConfig::load(&args.config)?;
    let bundle = cfg.bundle()?;
    if bundle.dim() != 2 {
        return Err(CliError::Usage("sweep needs a two-state system".into()));
    }
    let a1 = cfg.sweep.x1.to_axis("sweep.x1")?;
    let a2 = cfg.sweep.x2.to_axis("sweep.x2")?;
    let path = args.out.clone().unwrap_or_else(|| cfg.sweep.output.clone());

    let mut body = String::from("x1,x2,compatible,mode,b0,b1,feasible_lo,feasible_hi,kind\n");
    for x1 in a1.points() {
        for x2 in a2.points() {
            let d = bundle.lie_data(&State::new(vec![x1, x2])?)?;
            let set = feasible_set(&d);
            let (lo, hi) = set.bounds().unwrap_or((f64::NAN, f64::NAN));
            body.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                format_real(x1),
                format_real(x2),
                bool01(compatible(&d)),
                mode(&d),
                format_real(d.b0),
                format_real(d.b1),
                format_real(lo),
                format_real(hi),
                set.kind()
            ));
        }
    }
    std::fs::write(&path, body).map_err(io_err(&path))?;
    println!("rows={}", a1.n * a2.n);
    println!("csv={}", path.display());
    Ok(EXIT_OK)
}

pub fn find_x0(args: &FileArgs) -> Result<u8, CliError> {
    let cfg = RunConfig::load(&args.config)?;
    let bundle = cfg.bundle()?;
    let search_cfg = cfg.search()?;
    println!("seed={}", cfg.search.seed);
    println!("candidates={}", search_cfg.grid.len());
    let Some(found) = search(&bundle, &search_cfg)? else {
        println!("x0=none");
        eprintln!("error: no qualifying x0 on the grid");
        return Ok(EXIT_NOT_FOUND);
    };
    println!("x0={},{}", format_real(found.x0[0]), format_real(found.x0[1]));
    println!("index={}", found.index);
    println!("h0={}", format_real(found.h0));
    println!("baseline_min_h={}", format_real(found.baseline.min_h));
    println!("kl_sharp_min_h={}", format_real(found.kl_sharp.min_h));
    println!("kl_sharp_mode_pattern={}", pattern(&found.kl_sharp));
    println!("kl_sharp_converged={}", bool01(found.kl_sharp.converged));
    println!("km_sharp_min_h={}", format_real(found.km_sharp.min_h));
    println!("km_sharp_mode_pattern={}", pattern(&found.km_sharp));
    println!("km_sharp_converged={}", bool01(found.km_sharp.converged));
    if let Some(p) = &args.out {
        let text = format!("x0 = [{:?}, {:?}]\n", found.x0[0], found.x0[1]);
        std::fs::write(p, text).map_err(io_err(p))?;
    }
    Ok(EXIT_OK)
}
