//! Subcommand implementations. Every command writes deterministic text:
//! rationals print as `p/q`, elements in canonical monomial order, homotopy
//! terms by (t-power, dt-flag). `--json` switches to a stable JSON
//! rendering of the same data.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::BigRational;

use sullivan_cochain as cochain;
use sullivan_core as core;
use sullivan_core::Morphism;

use crate::parser::parse_source;
use crate::printer::print_expr;
use crate::semantics::{cylinder_to_expr, Context};

pub const USAGE: &str = "\
usage: sullivan <command> [options]

commands:
  validate      --input FILE --homotopy H --from F --to G
  minmodel      (--model NAME | --input FILE --dga A) --up-to N
  periods       --model NAME --degree N [--dim D] [--reduce]
  reduce        --model NAME --degree N [--dim D]
  concat        --input FILE --first H1 --second H2
  nullhomotopy  --model NAME [--dim D] [--top N]
  distortion    --model NAME --degree N [--dual q1,q2,...]
  iso           --complex FILE --k K --side forms|chains [--cap N]
  duality       --complex FILE --k K [--cap N]
  round         --complex FILE --n N --cocycle FILE --target FILE
  bounds        --kappa X [--c X] [--cprime X] [--n N] [--lmax X] [--samples N]

global options:
  --json        emit structured output
";

/// Exit status conventions: 0 on success, 1 on domain errors, 2 on usage
/// errors.
pub fn run(args: &[String]) -> (String, i32) {
    match dispatch(args) {
        Ok(text) => (text, 0),
        Err(CommandError::Usage(msg)) => (format!("{msg}\n\n{USAGE}"), 2),
        Err(CommandError::Domain(msg)) => (format!("error: {msg}\n"), 1),
    }
}

pub enum CommandError {
    Usage(String),
    Domain(String),
}

type CmdResult = Result<String, CommandError>;

fn usage(msg: impl Into<String>) -> CommandError {
    CommandError::Usage(msg.into())
}

fn domain(msg: impl std::fmt::Display) -> CommandError {
    CommandError::Domain(msg.to_string())
}

struct Options {
    flags: BTreeMap<String, String>,
    json: bool,
}

impl Options {
    fn parse(args: &[String]) -> Result<Options, CommandError> {
        let mut flags = BTreeMap::new();
        let mut json = false;
        let mut it = args.iter();
        while let Some(arg) = it.next() {
            if arg == "--json" {
                json = true;
                continue;
            }
            let Some(name) = arg.strip_prefix("--") else {
                return Err(usage(format!("unexpected argument `{arg}`")));
            };
            let value = it
                .next()
                .ok_or_else(|| usage(format!("flag `--{name}` needs a value")))?;
            flags.insert(name.to_string(), value.clone());
        }
        Ok(Options { flags, json })
    }

    fn get(&self, name: &str) -> Result<&str, CommandError> {
        self.flags
            .get(name)
            .map(|s| s.as_str())
            .ok_or_else(|| usage(format!("missing required flag `--{name}`")))
    }

    fn get_opt(&self, name: &str) -> Option<&str> {
        self.flags.get(name).map(|s| s.as_str())
    }

    fn get_u32(&self, name: &str) -> Result<u32, CommandError> {
        self.get(name)?
            .parse()
            .map_err(|_| usage(format!("flag `--{name}` expects an integer")))
    }

    fn get_u32_opt(&self, name: &str, default: u32) -> Result<u32, CommandError> {
        match self.get_opt(name) {
            Some(v) => v
                .parse()
                .map_err(|_| usage(format!("flag `--{name}` expects an integer"))),
            None => Ok(default),
        }
    }

    fn get_f64_opt(&self, name: &str, default: f64) -> Result<f64, CommandError> {
        match self.get_opt(name) {
            Some(v) => v
                .parse()
                .map_err(|_| usage(format!("flag `--{name}` expects a number"))),
            None => Ok(default),
        }
    }
}

fn dispatch(args: &[String]) -> CmdResult {
    let Some(command) = args.first() else {
        return Err(usage("no command given"));
    };
    let opts = Options::parse(&args[1..])?;
    match command.as_str() {
        "validate" => cmd_validate(&opts),
        "minmodel" => cmd_minmodel(&opts),
        "periods" => cmd_periods(&opts, false),
        "reduce" => cmd_periods(&opts, true),
        "concat" => cmd_concat(&opts),
        "nullhomotopy" => cmd_nullhomotopy(&opts),
        "distortion" => cmd_distortion(&opts),
        "iso" => cmd_iso(&opts),
        "duality" => cmd_duality(&opts),
        "round" => cmd_round(&opts),
        "bounds" => cmd_bounds(&opts),
        other => Err(usage(format!("unknown command `{other}`"))),
    }
}

fn read_file(path: &str) -> Result<String, CommandError> {
    std::fs::read_to_string(path).map_err(|e| domain(format!("cannot read `{path}`: {e}")))
}

fn load_context(path: &str) -> Result<Context, CommandError> {
    let text = read_file(path)?;
    let file = parse_source(&text).map_err(|e| domain(format!("{path}:{e}")))?;
    Context::from_source(&file).map_err(domain)
}

fn model_with_dimension(opts: &Options) -> Result<(core::FreeCdga, String, u32), CommandError> {
    let name = opts.get("model")?;
    let model = core::catalog(name).map_err(domain)?;
    let default_dim = core::model_dimension(name).unwrap_or(0);
    let dim = opts.get_u32_opt("dim", default_dim)?;
    Ok((model, name.to_string(), dim))
}

/// Stable one-level JSON rendering: keys in insertion order, values are
/// strings, numbers, or flat arrays of strings.
struct Json {
    fields: Vec<(String, String)>,
}

impl Json {
    fn new() -> Self {
        Json { fields: Vec::new() }
    }

    fn push_str(&mut self, key: &str, value: impl AsRef<str>) {
        let escaped = value
            .as_ref()
            .replace('\\', "\\\\")
            .replace('"', "\\\"");
        self.fields.push((key.to_string(), format!("\"{escaped}\"")));
    }

    fn push_raw(&mut self, key: &str, value: impl Into<String>) {
        self.fields.push((key.to_string(), value.into()));
    }

    fn push_list(&mut self, key: &str, values: &[String]) {
        let items: Vec<String> = values
            .iter()
            .map(|v| format!("\"{}\"", v.replace('\\', "\\\\").replace('"', "\\\"")))
            .collect();
        self.fields
            .push((key.to_string(), format!("[{}]", items.join(","))));
    }

    fn render(&self) -> String {
        let body: Vec<String> = self
            .fields
            .iter()
            .map(|(k, v)| format!("\"{k}\":{v}"))
            .collect();
        format!("{{{}}}\n", body.join(","))
    }
}

fn cmd_validate(opts: &Options) -> CmdResult {
    let ctx = load_context(opts.get("input")?)?;
    let h = ctx
        .homotopies
        .get(opts.get("homotopy")?)
        .ok_or_else(|| domain("unknown homotopy"))?;
    let f = ctx
        .morphisms
        .get(opts.get("from")?)
        .ok_or_else(|| domain("unknown morphism (--from)"))?;
    let g = ctx
        .morphisms
        .get(opts.get("to")?)
        .ok_or_else(|| domain("unknown morphism (--to)"))?;
    let valid = core::validate_homotopy(h, f, g).map_err(domain)?;
    if opts.json {
        let mut j = Json::new();
        j.push_raw("valid", valid.to_string());
        Ok(j.render())
    } else {
        Ok(format!("valid: {valid}\n"))
    }
}

fn cmd_minmodel(opts: &Options) -> CmdResult {
    let up_to = opts.get_u32("up-to")?;
    let algebra = if let Some(name) = opts.get_opt("model") {
        core::catalog(name).map_err(domain)?
    } else {
        let ctx = load_context(opts.get("input")?)?;
        ctx.dga(opts.get("dga")?).map_err(domain)?.clone()
    };
    let (model, comparison) = core::minimal_model_of(&algebra, up_to).map_err(domain)?;
    let mut out = String::new();
    writeln!(out, "minimal model through degree {up_to}:").unwrap();
    out.push_str(&present_algebra(&model, "M"));
    writeln!(out, "comparison images:").unwrap();
    for id in model.signature().ids() {
        writeln!(
            out,
            "  {} -> {}",
            model.signature().generator(id).name,
            comparison.image(id)
        )
        .unwrap();
    }
    writeln!(out, "cohomology dimensions (degree: model = input):").unwrap();
    for k in 0..=up_to {
        writeln!(
            out,
            "  {}: {} = {}",
            k,
            model.cohomology_dim(k).map_err(domain)?,
            algebra.cohomology_dim(k).map_err(domain)?
        )
        .unwrap();
    }
    if opts.json {
        let mut j = Json::new();
        j.push_str("presentation", present_algebra(&model, "M").trim_end());
        let dims: Vec<String> = (0..=up_to)
            .map(|k| model.cohomology_dim(k).map(|d| d.to_string()))
            .collect::<Result<_, _>>()
            .map_err(domain)?;
        j.push_list("cohomology", &dims);
        return Ok(j.render());
    }
    Ok(out)
}

fn present_algebra(a: &core::FreeCdga, name: &str) -> String {
    let mut out = format!("dga {name} {{\n");
    for id in a.signature().ids() {
        let g = a.signature().generator(id);
        out.push_str(&format!("  gen {}: {};\n", g.name, g.degree));
    }
    for id in a.signature().ids() {
        let image = a.generator_differential(id);
        if !image.is_zero() {
            let expr = crate::semantics::element_to_expr(image);
            out.push_str(&format!(
                "  d {} = {};\n",
                a.signature().generator(id).name,
                print_expr(&expr)
            ));
        }
    }
    out.push_str("}\n");
    out
}

fn cmd_periods(opts: &Options, reduce: bool) -> CmdResult {
    let (model, name, dim) = model_with_dimension(opts)?;
    let degree = opts.get_u32("degree")?;
    let run = core::homotopy_periods(&model, dim, degree).map_err(domain)?;
    let do_reduce = reduce || opts.get_opt("reduce").is_some();
    let mut out = String::new();
    let mut j = Json::new();
    j.push_str("model", &name);
    j.push_raw("degree", degree.to_string());
    let mut entries = Vec::new();
    for p in &run.periods {
        if do_reduce {
            let reduction =
                core::reduce_weight(&run.extension, &run.ledger, &p.integrand).map_err(domain)?;
            writeln!(
                out,
                "{}: integrand {}, weight {} (raw weight {})",
                p.generator, reduction.element, reduction.weight, p.weight
            )
            .unwrap();
            entries.push(format!(
                "{}: {} [{} <- {}]",
                p.generator, reduction.element, reduction.weight, p.weight
            ));
        } else {
            writeln!(out, "{}: integrand {}, weight {}", p.generator, p.integrand, p.weight)
                .unwrap();
            entries.push(format!("{}: {} [{}]", p.generator, p.integrand, p.weight));
        }
    }
    if opts.json {
        j.push_list("periods", &entries);
        return Ok(j.render());
    }
    Ok(out)
}

fn cmd_concat(opts: &Options) -> CmdResult {
    let ctx = load_context(opts.get("input")?)?;
    let first = ctx
        .homotopies
        .get(opts.get("first")?)
        .ok_or_else(|| domain("unknown homotopy (--first)"))?;
    let second = ctx
        .homotopies
        .get(opts.get("second")?)
        .ok_or_else(|| domain("unknown homotopy (--second)"))?;
    let joined = core::concatenate(first, second).map_err(domain)?;
    // Exact additivity of the fiberwise integrals, reported per generator.
    let additive = {
        let a = first.integral_images();
        let b = second.integral_images();
        joined
            .integral_images()
            .iter()
            .zip(a.iter().zip(b.iter()))
            .all(|(j, (x, y))| j == &(x + y))
    };
    let mut out = String::new();
    writeln!(out, "homotopy Concat : source -> target {{").unwrap();
    for id in joined.source().signature().ids() {
        let expr = cylinder_to_expr(joined.image(id));
        writeln!(
            out,
            "  {} -> {};",
            joined.source().signature().generator(id).name,
            print_expr(&expr)
        )
        .unwrap();
    }
    writeln!(out, "}}").unwrap();
    writeln!(out, "integral additivity: {}", if additive { "exact" } else { "violated" })
        .unwrap();
    if opts.json {
        let mut j = Json::new();
        j.push_raw("additive", additive.to_string());
        return Ok(j.render());
    }
    Ok(out)
}

fn cmd_nullhomotopy(opts: &Options) -> CmdResult {
    let (model, name, dim) = model_with_dimension(opts)?;
    let top = opts.get_u32_opt(
        "top",
        model
            .signature()
            .ids()
            .map(|id| model.signature().degree(id))
            .max()
            .unwrap_or(2),
    )?;
    let grading = core::detect_positive_weights(&model)
        .ok_or_else(|| domain("model admits no positive weight grading"))?;
    let (_, phi, _) = core::pullback_setup(&model, dim, top).map_err(domain)?;
    let run = core::positive_weight_nullhomotopy(&grading, &phi).map_err(domain)?;
    let zero = Morphism::zero(run.phi.source().clone(), run.extension.clone());
    let valid = core::validate_homotopy(&run.homotopy, &zero, &run.phi).map_err(domain)?;
    let filtration = core::weight_filtration(&model, top);
    let mut out = String::new();
    writeln!(out, "model: {name}").unwrap();
    let weights: Vec<String> = model
        .signature()
        .ids()
        .map(|id| {
            format!(
                "{}:{}",
                model.signature().generator(id).name,
                grading.weight(id)
            )
        })
        .collect();
    writeln!(out, "grading: {}", weights.join(" ")).unwrap();
    writeln!(out, "valid: {valid}").unwrap();
    for id in run.homotopy.source().signature().ids() {
        let gen = run.homotopy.source().signature().generator(id);
        let expr = cylinder_to_expr(run.homotopy.image(id));
        let level = filtration.level(id).unwrap_or(0);
        let c_weight = run
            .ledger
            .weight(&run.antiderivatives[id.0 as usize])
            .map_err(domain)?;
        match c_weight {
            Some(w) => writeln!(
                out,
                "  {} -> {}; c-weight {} (level {}, bound {})",
                gen.name,
                print_expr(&expr),
                w,
                level,
                gen.degree as i64 + level as i64 - 1
            )
            .unwrap(),
            None => writeln!(out, "  {} -> {};", gen.name, print_expr(&expr)).unwrap(),
        }
    }
    if opts.json {
        let mut j = Json::new();
        j.push_str("model", &name);
        j.push_raw("valid", valid.to_string());
        j.push_list("grading", &weights);
        return Ok(j.render());
    }
    Ok(out)
}

fn cmd_distortion(opts: &Options) -> CmdResult {
    let (model, name, _) = model_with_dimension(opts)?;
    let degree = opts.get_u32("degree")?;
    let count = model
        .signature()
        .ids()
        .filter(|&id| model.signature().degree(id) == degree)
        .count();
    let dual: Vec<BigRational> = match opts.get_opt("dual") {
        Some(spec) => spec
            .split(',')
            .map(|p| {
                cochain::parse_rational(p.trim())
                    .ok_or_else(|| usage(format!("bad rational `{p}` in --dual")))
            })
            .collect::<Result<_, _>>()?,
        None => vec![BigRational::from_integer(1.into()); count],
    };
    let (num, den) = core::predict_distortion_exponent(&model, degree, &dual).map_err(domain)?;
    if opts.json {
        let mut j = Json::new();
        j.push_str("model", &name);
        j.push_raw("degree", degree.to_string());
        j.push_str("exponent", format!("{num}/{den}"));
        return Ok(j.render());
    }
    Ok(format!("exponent: {num}/{den}\n"))
}

fn cmd_iso(opts: &Options) -> CmdResult {
    let side = match opts.get("side")? {
        "forms" => cochain::Side::Forms,
        "chains" => cochain::Side::Chains,
        other => return Err(usage(format!("--side must be forms or chains, got `{other}`"))),
    };
    let k = opts.get_u32("k")? as usize;
    let cap = opts.get_u32_opt("cap", cochain::DEFAULT_ENUMERATION_CAP as u32)? as usize;
    let pair = cochain::parse_complex(&read_file(opts.get("complex")?)?).map_err(domain)?;
    let result = cochain::iso_constant_capped(&pair, k, side, cap).map_err(domain)?;
    let mut out = String::new();
    writeln!(out, "constant: {}", result.constant).unwrap();
    if let Some(extremal) = &result.extremal {
        writeln!(out, "extremal: {extremal}").unwrap();
    }
    if let Some(witness) = &result.witness {
        writeln!(out, "witness: {witness}").unwrap();
    }
    if opts.json {
        let mut j = Json::new();
        j.push_str("constant", result.constant.to_string());
        return Ok(j.render());
    }
    Ok(out)
}

fn cmd_duality(opts: &Options) -> CmdResult {
    let pair = cochain::parse_complex(&read_file(opts.get("complex")?)?).map_err(domain)?;
    let k = opts.get_u32("k")? as usize;
    let cap = opts.get_u32_opt("cap", cochain::DEFAULT_ENUMERATION_CAP as u32)? as usize;
    let report = cochain::duality_check_capped(&pair, k, cap).map_err(domain)?;
    if opts.json {
        let mut j = Json::new();
        j.push_str("c1", report.c1.to_string());
        j.push_str("c2", report.c2.to_string());
        j.push_raw("equal", report.equal.to_string());
        return Ok(j.render());
    }
    if report.equal {
        Ok(format!("C1 = C2 = {}, equal: true\n", report.c1))
    } else {
        Ok(format!(
            "C1 = {}, C2 = {}, equal: false\n",
            report.c1, report.c2
        ))
    }
}

fn cmd_round(opts: &Options) -> CmdResult {
    let pair = cochain::parse_complex(&read_file(opts.get("complex")?)?).map_err(domain)?;
    let n = opts.get_u32("n")? as usize;
    let c = cochain::parse_cochain(&pair, n, &read_file(opts.get("cocycle")?)?).map_err(domain)?;
    let w = cochain::parse_cochain(&pair, n, &read_file(opts.get("target")?)?).map_err(domain)?;
    let result = cochain::guth_round(&pair, n, &c, &w).map_err(domain)?;
    let mut out = String::new();
    writeln!(out, "primitive: {}", result.primitive).unwrap();
    writeln!(out, "rounded: {}", result.rounded).unwrap();
    writeln!(out, "remainder: {}", result.remainder).unwrap();
    writeln!(out, "remainder sup-norm: {}", result.remainder.sup_norm()).unwrap();
    writeln!(out, "within per-cell bounds: {}", result.within_bounds).unwrap();
    if opts.json {
        let mut j = Json::new();
        j.push_str("remainder_norm", result.remainder.sup_norm().to_string());
        j.push_raw("within_bounds", result.within_bounds.to_string());
        return Ok(j.render());
    }
    Ok(out)
}

fn cmd_bounds(opts: &Options) -> CmdResult {
    let kappa = opts.get_f64_opt("kappa", f64::NAN)?;
    if kappa.is_nan() {
        return Err(usage("missing required flag `--kappa`"));
    }
    let params = core::RecurrenceParams {
        c: opts.get_f64_opt("c", 1.0)?,
        c_prime: opts.get_f64_opt("cprime", 1.0)?,
        n: opts.get_u32_opt("n", 2)?,
        kappa,
        l_max: opts.get_f64_opt("lmax", 1e12)?,
        samples: opts.get_u32_opt("samples", 9)? as usize,
    };
    let report = core::weird_recurrence(&params);
    let mut out = String::new();
    writeln!(out, "crossing: {:.2e}", report.crossing).unwrap();
    writeln!(out, "base constant: {:.6e}", report.base_constant).unwrap();
    writeln!(out, "L bound").unwrap();
    for (l, bound) in &report.table {
        writeln!(out, "{l:.6e} {bound:.6e}").unwrap();
    }
    if opts.json {
        let mut j = Json::new();
        j.push_str("crossing", format!("{:.2e}", report.crossing));
        let rows: Vec<String> = report
            .table
            .iter()
            .map(|(l, b)| format!("{l:.6e} {b:.6e}"))
            .collect();
        j.push_list("table", &rows);
        return Ok(j.render());
    }
    Ok(out)
}
