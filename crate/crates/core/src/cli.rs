//! Command-line front end.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::congruence::{
    annihilator_candidate, intersection_candidate, irreducible_form, project_alphabet, relate,
    Budget, CandidateConfig, CongruencePresentation, HSequence, Side,
};
use crate::counterexample::{refute_finite_generation, tau_pairs, RefutationReport};
use crate::element::{Flavor, MonoidElement};
use crate::error::{MunnError, Result};
use crate::factorization::{crack, crack_fla, crack_left, CrackResult};
use crate::finitary::{generating_set, Condition};
use crate::format::{
    element_to_json, parse_element, parse_pair, render_dot, render_element, PresentationFile,
};
use crate::retract::{fla_to_free_retract, transfer_annihilator};
use crate::words::Alphabet;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Parser)]
#[command(
    name = "munn",
    version,
    about = "Munn-tree arithmetic in FI, FA and FLA"
)]
pub struct Cli {
    /// Comma-separated letters.
    #[arg(long, global = true, default_value = "x,y")]
    pub alphabet: String,
    #[arg(long, global = true, default_value = "fla", value_parser = parse_flavor)]
    pub flavor: Flavor,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: OutputFormat,
    /// Weight bound for searches.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_weight: u64,
    /// Node budget for searches.
    #[arg(long, global = true, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_nodes: u64,
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub timeout_ms: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

fn parse_flavor(s: &str) -> std::result::Result<Flavor, String> {
    s.parse().map_err(|e: MunnError| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Arithmetic on single elements.
    #[command(subcommand)]
    Element(ElementCmd),
    /// Generating set for condition R, r, L or l.
    Finitary {
        #[arg(long)]
        condition: Condition,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Peel one leaf off an equation.
    Crack(CrackArgs),
    /// Bounded congruence searches.
    #[command(subcommand)]
    Congruence(CongruenceCmd),
    /// Apply the retract (A, a) ↦ (a↓, a) of FLA onto the free monoid.
    Retract {
        /// Element literals.
        elements: Vec<String>,
        /// Pairs `left;right`, transferred as a generating set.
        #[arg(long = "pair")]
        pairs: Vec<String>,
    },
    /// Refute that τ-pairs up to a weight generate τ (always in FI).
    Counterexample {
        #[arg(long, default_value_t = 6)]
        k: usize,
        #[arg(long, default_value_t = 4)]
        max_h_weight: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum ElementCmd {
    Parse {
        element: String,
    },
    #[command(alias = "multiply")]
    Mul {
        #[arg(required = true)]
        elements: Vec<String>,
    },
    Inverse {
        element: String,
    },
    Plus {
        element: String,
    },
    Star {
        element: String,
    },
    Weight {
        element: String,
    },
    Dot {
        element: String,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum CrackKind {
    /// `a·u = b·v`, leaf of `A ∪ aU` outside `A ∪ B`.
    Right,
    /// `d·z = b·v` in FLA, leaf of `Z`.
    Fla,
    /// `u·a = v·b` in FLA.
    Left,
}

#[derive(Debug, Args)]
pub struct CrackArgs {
    #[arg(long, value_enum, default_value = "right")]
    pub kind: CrackKind,
    #[arg(long)]
    pub a: String,
    #[arg(long)]
    pub u: String,
    #[arg(long)]
    pub b: String,
    #[arg(long)]
    pub v: String,
    #[arg(long)]
    pub leaf: String,
}

#[derive(Debug, Args)]
pub struct PresentationArgs {
    /// JSON presentation file.
    #[arg(long)]
    pub presentation: Option<std::path::PathBuf>,
    /// Generating pairs `left;right`.
    #[arg(long = "pair")]
    pub pairs: Vec<String>,
    #[arg(long, default_value = "right")]
    pub side: String,
}

#[derive(Debug, Subcommand)]
pub enum CongruenceCmd {
    /// Search for a sequence joining two elements.
    Relate {
        #[command(flatten)]
        rho: PresentationArgs,
        m1: String,
        m2: String,
    },
    /// Search, then reduce the sequence found between `a·u` and `b·v`.
    Reduce {
        #[command(flatten)]
        rho: PresentationArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        u: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        v: String,
    },
    /// Candidate generating set for the right annihilator of a·ρ.
    Annihilator {
        #[command(flatten)]
        rho: PresentationArgs,
        #[arg(long)]
        a: String,
        /// Overrides the derived weight limit.
        #[arg(long)]
        weight_limit: Option<usize>,
    },
    /// Candidate generators of aρ·S ∩ bρ·S.
    Intersect {
        #[command(flatten)]
        rho: PresentationArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        weight_limit: Option<usize>,
    },
    /// Strip letters outside `keep` from `d·z = b·v`.
    Project {
        #[arg(long)]
        d: String,
        #[arg(long)]
        z: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        v: String,
        /// Letters to keep, comma-separated.
        #[arg(long)]
        keep: String,
    },
}

/// What a command produced, in every format it supports.
struct Output {
    text: String,
    json: Value,
    dot: Option<String>,
}

impl Output {
    fn new(text: String, json: Value) -> Self {
        Output {
            text,
            json,
            dot: None,
        }
    }
}

struct Ctx {
    alphabet: Alphabet,
    flavor: Flavor,
    max_weight: usize,
    max_nodes: usize,
    timeout: Option<Duration>,
}

impl Ctx {
    fn parse(&self, s: &str) -> Result<MonoidElement> {
        parse_element(s, &self.alphabet, self.flavor)
    }

    fn render(&self, m: &MonoidElement) -> String {
        render_element(m, &self.alphabet).expect("elements built from this alphabet")
    }

    fn json(&self, m: &MonoidElement) -> Value {
        serde_json::to_value(
            element_to_json(m, &self.alphabet).expect("elements built from this alphabet"),
        )
        .expect("plain data")
    }

    fn budget(&self) -> Budget {
        Budget::new(self.max_nodes, self.timeout)
    }

    fn presentation(&self, args: &PresentationArgs) -> Result<CongruencePresentation> {
        if let Some(path) = &args.presentation {
            let text = std::fs::read_to_string(path)
                .map_err(|e| MunnError::Parse(format!("{}: {e}", path.display())))?;
            let file = PresentationFile::from_json_str(&text)?;
            if file.alphabet()? != self.alphabet || file.flavor != self.flavor {
                return Err(MunnError::pre(
                    "presentation matches --alphabet and --flavor",
                    format!("{:?} {}", file.alphabet, file.flavor),
                ));
            }
            return file.to_presentation();
        }
        let side: Side = args.side.parse()?;
        let pairs = args
            .pairs
            .iter()
            .map(|p| parse_pair(p, &self.alphabet, self.flavor))
            .collect::<Result<Vec<_>>>()?;
        CongruencePresentation::new(self.flavor, side, pairs, self.alphabet.len())
    }

    fn sequence_json(&self, s: &HSequence) -> Value {
        json!({
            "side": s.side.to_string(),
            "a": self.json(&s.a),
            "u": self.json(&s.u),
            "b": self.json(&s.b),
            "v": self.json(&s.v),
            "steps": s.steps.iter().map(|st| json!({
                "c": self.json(&st.c),
                "d": self.json(&st.d),
                "t": self.json(&st.t),
            })).collect::<Vec<_>>(),
        })
    }

    fn sequence_text(&self, s: &HSequence) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} sequence with {} step(s)", s.side, s.steps.len());
        let elems = s.elements();
        for (i, e) in elems.iter().enumerate() {
            let _ = writeln!(out, "  [{i}] {}", self.render(e));
        }
        out.pop();
        out
    }

    fn pairs_json(&self, pairs: &[(MonoidElement, MonoidElement)]) -> Value {
        Value::Array(
            pairs
                .iter()
                .map(|(u, v)| json!([self.json(u), self.json(v)]))
                .collect(),
        )
    }

    fn pairs_text(&self, pairs: &[(MonoidElement, MonoidElement)]) -> String {
        pairs
            .iter()
            .map(|(u, v)| format!("{} ; {}", self.render(u), self.render(v)))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

fn element_cmd(ctx: &Ctx, cmd: &ElementCmd) -> Result<Output> {
    let single = |m: MonoidElement| {
        let mut o = Output::new(ctx.render(&m), ctx.json(&m));
        o.dot = Some(render_dot(&m, &ctx.alphabet).expect("elements built from this alphabet"));
        o
    };
    Ok(match cmd {
        ElementCmd::Parse { element } => single(ctx.parse(element)?),
        ElementCmd::Mul { elements } => {
            let ms = elements
                .iter()
                .map(|e| ctx.parse(e))
                .collect::<Result<Vec<_>>>()?;
            single(MonoidElement::product(ctx.flavor, ms.iter())?)
        }
        ElementCmd::Inverse { element } => single(ctx.parse(element)?.inverse()?),
        ElementCmd::Plus { element } => single(ctx.parse(element)?.plus()),
        ElementCmd::Star { element } => single(ctx.parse(element)?.star()?),
        ElementCmd::Weight { element } => {
            let m = ctx.parse(element)?;
            Output::new(
                format!("weight {}\ndiameter {}", m.weight(), m.diameter()),
                json!({"weight": m.weight(), "diameter": m.diameter()}),
            )
        }
        ElementCmd::Dot { element } => {
            let m = ctx.parse(element)?;
            let dot = render_dot(&m, &ctx.alphabet)?;
            let mut o = Output::new(dot.trim_end().to_string(), json!({"dot": dot}));
            o.dot = Some(dot);
            o
        }
    })
}

fn finitary_cmd(ctx: &Ctx, condition: Condition, a: &str, b: &str) -> Result<Output> {
    let a = ctx.parse(a)?;
    let b = ctx.parse(b)?;
    let rep = generating_set(condition, &a, &b)?;
    let mut text = format!(
        "condition {} for {} , {}: {} generator(s)",
        condition,
        ctx.render(&a),
        ctx.render(&b),
        rep.generators.len()
    );
    let json_gens: Value = if condition.is_ideal() {
        Value::Array(rep.elements().into_iter().map(|u| ctx.json(u)).collect())
    } else {
        ctx.pairs_json(&rep.generators)
    };
    for (u, v) in &rep.generators {
        if condition.is_ideal() {
            let _ = write!(text, "\n  {}", ctx.render(u));
        } else {
            let _ = write!(text, "\n  {} ; {}", ctx.render(u), ctx.render(v));
        }
    }
    Ok(Output::new(
        text,
        json!({
            "condition": condition.to_string(),
            "a": ctx.json(&a),
            "b": ctx.json(&b),
            "empty": rep.empty,
            "generators": json_gens,
        }),
    ))
}

fn crack_cmd(ctx: &Ctx, args: &CrackArgs) -> Result<Output> {
    let [a, u, b, v] = [&args.a, &args.u, &args.b, &args.v].map(|s| ctx.parse(s));
    let (a, u, b, v) = (a?, u?, b?, v?);
    let leaf = ctx.alphabet.parse_word(&args.leaf)?;
    let r: CrackResult = match args.kind {
        CrackKind::Right => crack(&a, &u, &b, &v, &leaf)?,
        CrackKind::Fla => crack_fla(&a, &u, &b, &v, &leaf)?,
        CrackKind::Left => crack_left(&a, &u, &b, &v, &leaf)?,
    };
    let mut text = format!(
        "{}\nu' = {}\nv' = {}\nz  = {}",
        r.case_tag,
        ctx.render(&r.u_prime),
        ctx.render(&r.v_prime),
        ctx.render(&r.z)
    );
    if let (Some(fa), Some(fb)) = (r.flag_a, r.flag_b) {
        let _ = write!(text, "\nflag A {fa}\nflag B {fb}");
    }
    Ok(Output::new(
        text,
        json!({
            "case": r.case_tag.to_string(),
            "u_prime": ctx.json(&r.u_prime),
            "v_prime": ctx.json(&r.v_prime),
            "z": ctx.json(&r.z),
            "flag_a": r.flag_a,
            "flag_b": r.flag_b,
        }),
    ))
}

fn not_found(ctx: &Ctx) -> Output {
    Output::new(
        format!("not related within weight {}", ctx.max_weight),
        json!({"related": Value::Null, "max_weight": ctx.max_weight}),
    )
}

fn config(ctx: &Ctx, weight_limit: Option<usize>) -> CandidateConfig {
    let mut c = CandidateConfig::new(ctx.max_weight);
    c.weight_override = weight_limit;
    c.max_nodes = ctx.max_nodes;
    c
}

fn congruence_cmd(ctx: &Ctx, cmd: &CongruenceCmd) -> Result<Output> {
    match cmd {
        CongruenceCmd::Relate { rho, m1, m2 } => {
            let rho = ctx.presentation(rho)?;
            let (m1, m2) = (ctx.parse(m1)?, ctx.parse(m2)?);
            Ok(
                match relate(&rho, &m1, &m2, ctx.max_weight, &mut ctx.budget())? {
                    Some(s) => Output::new(
                        ctx.sequence_text(&s),
                        json!({"related": true, "sequence": ctx.sequence_json(&s)}),
                    ),
                    None => not_found(ctx),
                },
            )
        }
        CongruenceCmd::Reduce { rho, a, u, b, v } => {
            let rho = ctx.presentation(rho)?;
            let [a, u, b, v] = [a, u, b, v].map(|s| ctx.parse(s));
            let (a, u, b, v) = (a?, u?, b?, v?);
            let Some(mut s) = relate(
                &rho,
                &(&a * &u),
                &(&b * &v),
                ctx.max_weight,
                &mut ctx.budget(),
            )?
            else {
                return Ok(not_found(ctx));
            };
            if rho.side() == Side::Left {
                return Err(MunnError::pre(
                    "right-side presentation",
                    "reduce works on a·u = b·v",
                ));
            }
            s.a = a;
            s.u = u;
            s.b = b;
            s.v = v;
            s.validate(Some(&rho))?;
            let (r, y) = irreducible_form(&s)?;
            Ok(Output::new(
                format!("y = {}\n{}", ctx.render(&y), ctx.sequence_text(&r)),
                json!({"y": ctx.json(&y), "sequence": ctx.sequence_json(&r)}),
            ))
        }
        CongruenceCmd::Annihilator {
            rho,
            a,
            weight_limit,
        } => {
            let rho = ctx.presentation(rho)?;
            let a = ctx.parse(a)?;
            let c = annihilator_candidate(&rho, &a, &config(ctx, *weight_limit))?;
            let pairs = c.spanning_pairs();
            let b = c.bounds;
            let text = format!(
                "D' = {}, K = {}, W = {}, W' = {}\nweight limit {} (proof limit {}{})\n{} class(es), {} spanning pair(s)\n{}",
                b.script_d_prime,
                b.script_k,
                b.script_w,
                b.script_w_prime,
                c.weight_limit,
                c.proof_limit,
                if c.truncated { ", truncated" } else { "" },
                c.classes.len(),
                pairs.len(),
                ctx.pairs_text(&pairs)
            );
            Ok(Output::new(
                text.trim_end().to_string(),
                json!({
                    "bounds": serde_json::to_value(b).expect("plain data"),
                    "weight_limit": c.weight_limit,
                    "proof_limit": c.proof_limit,
                    "truncated": c.truncated,
                    "classes": c.classes.iter().map(|cl| cl.iter().map(|m| ctx.json(m)).collect::<Vec<_>>()).collect::<Vec<_>>(),
                }),
            ))
        }
        CongruenceCmd::Intersect {
            rho,
            a,
            b,
            weight_limit,
        } => {
            let rho = ctx.presentation(rho)?;
            let (a, b) = (ctx.parse(a)?, ctx.parse(b)?);
            let c = intersection_candidate(&rho, &a, &b, &config(ctx, *weight_limit))?;
            let mut text = format!(
                "D' = {}, weight limit {}\n{} representative(s)",
                c.script_d_prime,
                c.weight_limit,
                c.representatives.len()
            );
            for r in &c.representatives {
                let _ = write!(text, "\n  {}", ctx.render(r));
            }
            Ok(Output::new(
                text,
                json!({
                    "script_d_prime": c.script_d_prime,
                    "weight_limit": c.weight_limit,
                    "representatives": c.representatives.iter().map(|m| ctx.json(m)).collect::<Vec<_>>(),
                }),
            ))
        }
        CongruenceCmd::Project { d, z, b, v, keep } => {
            let [d, z, b, v] = [d, z, b, v].map(|s| ctx.parse(s));
            let (d, z, b, v) = (d?, z?, b?, v?);
            let keep = keep
                .split(',')
                .map(|s| {
                    ctx.alphabet
                        .index_of(s.trim())
                        .ok_or_else(|| MunnError::Alphabet(format!("unknown letter `{s}`")))
                })
                .collect::<Result<_>>()?;
            let p = project_alphabet(&d, &z, &b, &v, &keep)?;
            Ok(Output::new(
                format!(
                    "z' = {}\nv' = {}\nx  = {}",
                    ctx.render(&p.z),
                    ctx.render(&p.v),
                    ctx.render(&p.x)
                ),
                json!({"z_prime": ctx.json(&p.z), "v_prime": ctx.json(&p.v), "x": ctx.json(&p.x)}),
            ))
        }
    }
}

fn retract_cmd(ctx: &Ctx, elements: &[String], pairs: &[String]) -> Result<Output> {
    if ctx.flavor != Flavor::FLA {
        return Err(MunnError::UnsupportedFlavor {
            flavor: ctx.flavor,
            operation: "retract",
        });
    }
    let phi = fla_to_free_retract();
    let mut lines = Vec::new();
    let mut images = Vec::new();
    for e in elements {
        let m = ctx.parse(e)?;
        let p = phi.apply(&m)?;
        lines.push(format!("{} -> {}", ctx.render(&m), ctx.render(&p)));
        images.push(json!({"input": ctx.json(&m), "image": ctx.json(&p)}));
    }
    let parsed = pairs
        .iter()
        .map(|p| parse_pair(p, &ctx.alphabet, ctx.flavor))
        .collect::<Result<Vec<_>>>()?;
    let transferred = transfer_annihilator(&phi, &parsed)?;
    if !pairs.is_empty() {
        lines.push(format!("transferred {} pair(s)", transferred.len()));
        lines.push(ctx.pairs_text(&transferred));
    }
    Ok(Output::new(
        lines.join("\n"),
        json!({"images": images, "pairs": ctx.pairs_json(&transferred)}),
    ))
}

fn report_json(ctx: &Ctx, r: &RefutationReport) -> Value {
    json!({
        "k": r.k,
        "pairs": r.pairs,
        "max_component_size": r.max_component_size,
        "target": ctx.json(&r.target),
        "next": ctx.json(&r.next),
        "factorizations": r.factorizations.len(),
        "singleton": r.singleton,
        "tau_witness": r.tau_witness,
        "refuted": r.refuted,
    })
}

fn counterexample_cmd(ctx: &Ctx, k: usize, max_h_weight: usize) -> Result<Output> {
    // The construction lives in FI over two letters whatever --flavor says.
    if ctx.alphabet.len() != 2 {
        return Err(MunnError::pre(
            "two-letter alphabet",
            ctx.alphabet.symbols().join(","),
        ));
    }
    let h = tau_pairs(max_h_weight, ctx.max_nodes)?;
    let r = refute_finite_generation(&h, k)?;
    let mut text = String::new();
    let _ = writeln!(
        text,
        "{}",
        if r.refuted { "REFUTED" } else { "NOT REFUTED" }
    );
    let _ = writeln!(
        text,
        "H: {} pair(s) of weight <= {}, largest component {}",
        r.pairs, max_h_weight, r.max_component_size
    );
    let _ = writeln!(
        text,
        "target {} has {} left factorization move(s)",
        ctx.render(&r.target),
        r.factorizations.len()
    );
    let moved: Vec<_> = r
        .factorizations
        .iter()
        .filter(|f| !f.fixes_target(&r.target))
        .collect();
    let _ = writeln!(
        text,
        "{}",
        if moved.is_empty() {
            "every move fixes the target: its class is a singleton".to_string()
        } else {
            format!("{} move(s) change the target", moved.len())
        }
    );
    match r.tau_witness {
        Some((n, m)) => {
            let _ = writeln!(
                text,
                "tau witness with {}: n = {n}, m = {m}",
                ctx.render(&r.next)
            );
        }
        None => {
            let _ = writeln!(text, "no tau witness with {}", ctx.render(&r.next));
        }
    }
    let json = report_json(ctx, &r);
    Ok(Output::new(text.trim_end().to_string(), json))
}

fn dispatch(cli: &Cli) -> Result<Output> {
    let ctx = Ctx {
        alphabet: Alphabet::parse_list(&cli.alphabet)?,
        flavor: cli.flavor,
        max_weight: cli.max_weight as usize,
        max_nodes: cli.max_nodes as usize,
        timeout: cli.timeout_ms.map(Duration::from_millis),
    };
    match &cli.command {
        Command::Element(cmd) => element_cmd(&ctx, cmd),
        Command::Finitary { condition, a, b } => finitary_cmd(&ctx, *condition, a, b),
        Command::Crack(args) => crack_cmd(&ctx, args),
        Command::Congruence(cmd) => congruence_cmd(&ctx, cmd),
        Command::Retract { elements, pairs } => retract_cmd(&ctx, elements, pairs),
        Command::Counterexample { k, max_h_weight } => counterexample_cmd(&ctx, *k, *max_h_weight),
    }
}

/// Runs the CLI, writing to the given streams, and returns the exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(o) => {
            let body = match cli.format {
                OutputFormat::Text => o.text,
                OutputFormat::Json => serde_json::to_string(&o.json).expect("plain data"),
                OutputFormat::Dot => match o.dot {
                    Some(d) => d.trim_end().to_string(),
                    None => {
                        let _ = writeln!(err, "error: this command has no DOT output");
                        return 2;
                    }
                },
            };
            let _ = writeln!(out, "{body}");
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_resource() {
                3
            } else {
                1
            }
        }
    }
}
