//! Command-line front end. [`run`] parses arguments and returns the exit code
//! and output instead of printing, so it can be driven from tests.

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use crate::algebra::serde_impls::rational;
use crate::algebra::{parse_rational, rational_to_string, AffineExp, EtaPoly, ParamPoly, ParamRat, Rational};
use crate::domain::Point;
use crate::error::Error;
use crate::maya::{
    self, diagrams_to_tuple, equivalence, move_division, reduce, tuple_to_diagrams, verify_ledger,
    verify_move_identity, Direction, Equivalence, Ledger, MayaDiagram, ProportionalityReport,
    ReductionTarget, Which,
};
use crate::spectral::{check_nonsingular, permitted_spectrum, verify_eigenfunction, verify_extra_eigenstate, SpectrumEntry, SpectrumKind, SpectrumLabel};
use crate::states::{random_tuple, State, StateTuple, StateType};
use crate::wronskian::wronskian;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INVALID_TUPLE: i32 = 3;
pub const EXIT_IDENTITY: i32 = 4;
pub const EXIT_NON_GENERIC: i32 = 5;

#[derive(Parser, Debug)]
#[command(name = "maya-jacobi", version, about = "Multi-indexed Jacobi polynomials, Maya diagrams and deformed Poschl-Teller spectra")]
pub struct Cli {
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "latex")]
    pub json: bool,
    /// Emit LaTeX.
    #[arg(long, global = true)]
    pub latex: bool,
    /// Instantiate g (e.g. 37/10).
    #[arg(long, global = true, value_parser = parse_rational_arg, allow_hyphen_values = true)]
    pub g: Option<Rational>,
    /// Instantiate h (e.g. 52/7).
    #[arg(long, global = true, value_parser = parse_rational_arg, allow_hyphen_values = true)]
    pub h: Option<Rational>,
    /// Seed for randomized runs.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Wronskian of a tuple as (sin x)^a (cos x)^b P(eta).
    Poly {
        /// Comma-separated states, e.g. I1,II2,III1.
        #[arg(default_value = "")]
        tuple: String,
    },
    /// The pair of Maya diagrams of a tuple.
    Maya {
        #[arg(default_value = "")]
        tuple: String,
    },
    /// Reduce a tuple to a two-type normal form.
    Reduce {
        #[arg(default_value = "")]
        tuple: String,
        #[arg(long, value_enum, default_value_t = TargetArg::IN)]
        target: TargetArg,
        /// Check the resulting Wronskian identity.
        #[arg(long)]
        verify: bool,
    },
    /// Permitted spectrum of the deformed Hamiltonian.
    Spectrum {
        #[arg(default_value = "")]
        tuple: String,
        #[arg(long = "up-to", default_value_t = 6)]
        up_to: u32,
        /// Verify every listed eigenfunction and the nonsingularity of the potential.
        #[arg(long)]
        verify: bool,
    },
    /// Check the Wronskian identity behind division moves.
    VerifyIdentity {
        #[arg(default_value = "")]
        tuple: String,
        #[arg(long, value_enum)]
        diagram: Option<DiagramArg>,
        #[arg(long, value_enum)]
        dir: Option<DirArg>,
        /// All four moves on the given tuple.
        #[arg(long)]
        all: bool,
        /// Check all four moves on N random tuples instead.
        #[arg(long, value_name = "N")]
        random: Option<usize>,
    },
    /// Compare two tuples through their canonical (I, N) forms.
    Equivalent { first: String, second: String },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
#[allow(clippy::upper_case_acronyms)]
pub enum TargetArg {
    #[value(name = "IN")]
    IN,
    #[value(name = "I3")]
    I3,
    #[value(name = "2N")]
    N2,
    #[value(name = "23")]
    T23,
}

impl From<TargetArg> for ReductionTarget {
    fn from(t: TargetArg) -> Self {
        match t {
            TargetArg::IN => ReductionTarget::IAndN,
            TargetArg::I3 => ReductionTarget::IAndIII,
            TargetArg::N2 => ReductionTarget::IIAndN,
            TargetArg::T23 => ReductionTarget::IIAndIII,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum DiagramArg {
    First,
    Second,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum DirArg {
    Left,
    Right,
}

fn parse_rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("'{}' is not a rational number", s))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Latex,
}

/// Exit code and captured streams of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => EXIT_PARSE,
        Error::DuplicateState(_) | Error::IndexOutOfRange { .. } | Error::NotTypeIII(_) => EXIT_INVALID_TUPLE,
        Error::NonGeneric { .. } => EXIT_NON_GENERIC,
        Error::ZeroInput | Error::ZeroWronskian | Error::IncompatibleExponents(_) => EXIT_IDENTITY,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, ..Default::default() }
            } else {
                Outcome { code, stderr: text, ..Default::default() }
            };
        }
    };
    match execute(&cli) {
        Ok((stdout, ok)) => Outcome {
            code: if ok { EXIT_OK } else { EXIT_IDENTITY },
            stderr: if ok { String::new() } else { "identity check failed\n".into() },
            stdout,
        },
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {}\n", e),
        },
    }
}

fn format_of(cli: &Cli) -> Format {
    if cli.json {
        Format::Json
    } else if cli.latex {
        Format::Latex
    } else {
        Format::Text
    }
}

fn instantiation(cli: &Cli) -> crate::error::Result<Option<(Rational, Rational)>> {
    match (&cli.g, &cli.h) {
        (None, None) => Ok(None),
        (Some(g), Some(h)) => {
            Point::new(g.clone(), h.clone())?;
            Ok(Some((g.clone(), h.clone())))
        }
        _ => Err(Error::Parse("--g and --h must be given together".into())),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

/// Runs a parsed command: rendered output and whether every check passed.
fn execute(cli: &Cli) -> crate::error::Result<(String, bool)> {
    let format = format_of(cli);
    match &cli.command {
        Command::Poly { tuple } => {
            let r = poly_report(&StateTuple::parse(tuple)?, instantiation(cli)?)?;
            Ok((render(format, &r), true))
        }
        Command::Maya { tuple } => {
            let r = maya_report(&StateTuple::parse(tuple)?);
            Ok((render(format, &r), true))
        }
        Command::Reduce { tuple, target, verify } => {
            let r = reduce_report(&StateTuple::parse(tuple)?, (*target).into(), *verify, instantiation(cli)?)?;
            let ok = r.verification.as_ref().is_none_or(|v| v.proportional);
            Ok((render(format, &r), ok))
        }
        Command::Spectrum { tuple, up_to, verify } => {
            let r = spectrum_report(&StateTuple::parse(tuple)?, *up_to, *verify, instantiation(cli)?)?;
            let ok = r.checks.as_ref().is_none_or(|c| c.all_hold);
            Ok((render(format, &r), ok))
        }
        Command::VerifyIdentity { tuple, diagram, dir, all, random } => {
            let inst = instantiation(cli)?;
            let moves: Vec<(Which, Direction)> = match (diagram, dir) {
                _ if *all || random.is_some() => all_moves(),
                (Some(w), Some(d)) => vec![(which_of(*w), dir_of(*d))],
                (None, None) => all_moves(),
                _ => return Err(Error::Parse("--diagram and --dir must be given together".into())),
            };
            let tuples = match random {
                Some(n) => {
                    let mut rng = StdRng::seed_from_u64(cli.seed);
                    (0..*n).map(|_| random_tuple(&mut rng, 4, 4)).collect()
                }
                None => vec![StateTuple::parse(tuple)?],
            };
            let mut reports = Vec::new();
            for t in &tuples {
                for &(w, d) in &moves {
                    reports.push(verify_move_identity(t, w, d, inst.clone())?);
                }
            }
            let r = VerifyReport {
                all_proportional: reports.iter().all(|r| r.proportional),
                reports,
            };
            let ok = r.all_proportional;
            Ok((render(format, &r), ok))
        }
        Command::Equivalent { first, second } => {
            let r = equivalence(&StateTuple::parse(first)?, &StateTuple::parse(second)?);
            Ok((render(format, &r), true))
        }
    }
}

fn all_moves() -> Vec<(Which, Direction)> {
    Which::ALL
        .into_iter()
        .flat_map(|w| Direction::ALL.into_iter().map(move |d| (w, d)))
        .collect()
}

fn which_of(d: DiagramArg) -> Which {
    match d {
        DiagramArg::First => Which::First,
        DiagramArg::Second => Which::Second,
    }
}

fn dir_of(d: DirArg) -> Direction {
    match d {
        DirArg::Left => Direction::Left,
        DirArg::Right => Direction::Right,
    }
}

/// Text and LaTeX renderings of a report.
pub trait Render: Serialize {
    fn text(&self) -> String;
    fn latex(&self) -> String;
}

fn render<R: Render>(format: Format, r: &R) -> String {
    match format {
        Format::Json => to_json(r),
        Format::Text => r.text(),
        Format::Latex => r.latex(),
    }
}

fn state_latex(s: &State) -> String {
    match s.kind {
        StateType::N => format!("\\phi_{{{}}}", s.index),
        k => format!("\\tilde{{\\phi}}^{{\\mathrm{{{}}}}}_{{{}}}", k, s.index),
    }
}

fn tuple_latex(t: &StateTuple) -> String {
    let parts: Vec<String> = t.states().iter().map(state_latex).collect();
    format!("\\mathrm{{W}}[{}]", parts.join(", "))
}

fn tuple_text(t: &StateTuple) -> String {
    if t.is_empty() {
        "(empty)".into()
    } else {
        t.to_string()
    }
}

fn eta_latex(p: &EtaPoly<ParamRat>) -> String {
    let mut terms = Vec::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if num_traits_is_zero(c) {
            continue;
        }
        let var = match k {
            0 => String::new(),
            1 => "\\eta".into(),
            _ => format!("\\eta^{{{}}}", k),
        };
        terms.push(format!("\\left({}\\right){}", c.to_latex(), var));
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn num_traits_is_zero(c: &ParamRat) -> bool {
    c.num().is_zero()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instantiated {
    #[serde(with = "rational")]
    pub g: Rational,
    #[serde(with = "rational")]
    pub h: Rational,
    /// Coefficients of `eta^0, eta^1, ...`.
    pub coefficients: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyReport {
    pub tuple: StateTuple,
    pub exp_s: AffineExp,
    pub exp_c: AffineExp,
    pub degree: usize,
    pub coefficients: EtaPoly<ParamRat>,
    pub instantiated: Option<Instantiated>,
}

pub fn poly_report(t: &StateTuple, inst: Option<(Rational, Rational)>) -> crate::error::Result<PolyReport> {
    let w = wronskian(t)?;
    let instantiated = inst.map(|(g, h)| Instantiated {
        coefficients: w.poly().coeffs().iter().map(|c| rational_to_string(&c.eval(&g, &h))).collect(),
        g,
        h,
    });
    Ok(PolyReport {
        tuple: t.clone(),
        exp_s: w.exp_s().clone(),
        exp_c: w.exp_c().clone(),
        degree: w.degree(),
        coefficients: w.poly().map(|c: &ParamPoly| ParamRat::from(c.clone())),
        instantiated,
    })
}

impl Render for PolyReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "W[{}] = (sin x)^({}) (cos x)^({}) P(eta)", tuple_text(&self.tuple), self.exp_s, self.exp_c);
        let _ = writeln!(s, "degree {}", self.degree);
        for (k, c) in self.coefficients.coeffs().iter().enumerate().rev() {
            let _ = writeln!(s, "eta^{}: {}", k, c.num());
        }
        if let Some(i) = &self.instantiated {
            let _ = writeln!(s, "at g = {}, h = {}:", rational_to_string(&i.g), rational_to_string(&i.h));
            for (k, c) in i.coefficients.iter().enumerate().rev() {
                let _ = writeln!(s, "eta^{}: {}", k, c);
            }
        }
        s
    }

    fn latex(&self) -> String {
        format!(
            "{}(x) = (\\sin x)^{{{}}} (\\cos x)^{{{}}} \\left[{}\\right]\n",
            tuple_latex(&self.tuple),
            self.exp_s.to_latex(),
            self.exp_c.to_latex(),
            eta_latex(&self.coefficients)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramView {
    pub ascii: String,
    pub left_white: Vec<u32>,
    pub right_black: Vec<u32>,
}

impl From<&MayaDiagram> for DiagramView {
    fn from(d: &MayaDiagram) -> Self {
        DiagramView {
            ascii: d.render(),
            left_white: d.left_white.clone(),
            right_black: d.right_black.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MayaReport {
    pub tuple: StateTuple,
    pub first: DiagramView,
    pub second: DiagramView,
}

pub fn maya_report(t: &StateTuple) -> MayaReport {
    let d = tuple_to_diagrams(t);
    MayaReport {
        tuple: t.clone(),
        first: (&d.first).into(),
        second: (&d.second).into(),
    }
}

impl Render for MayaReport {
    fn text(&self) -> String {
        format!(
            "tuple:  {}\nfirst:  {}  (III: {:?}, N: {:?})\nsecond: {}  (II: {:?}, I: {:?})\n",
            tuple_text(&self.tuple),
            self.first.ascii,
            self.first.left_white,
            self.first.right_black,
            self.second.ascii,
            self.second.left_white,
            self.second.right_black
        )
    }

    fn latex(&self) -> String {
        let conv = |s: &str| {
            s.replace("...", "\\dots ")
                .replace('*', "\\bullet ")
                .replace('o', "\\circ ")
        };
        format!("{}, \\quad {}\n", conv(&self.first.ascii), conv(&self.second.ascii))
    }
}

fn ledger_latex(l: &Ledger) -> String {
    format!(
        "(x; g{:+}, h{:+}) (\\sin x)^{{{}}} (\\cos x)^{{{}}}",
        l.dg,
        l.dh,
        l.pref_s.to_latex(),
        l.pref_c.to_latex()
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReduceReport {
    pub tuple: StateTuple,
    pub target: ReductionTarget,
    pub reduced: StateTuple,
    pub ledger: Ledger,
    pub verification: Option<ProportionalityReport>,
}

pub fn reduce_report(
    t: &StateTuple,
    target: ReductionTarget,
    verify: bool,
    inst: Option<(Rational, Rational)>,
) -> crate::error::Result<ReduceReport> {
    let (reduced, ledger) = reduce(t, target);
    let verification = if verify {
        let point = inst.map(|(g, h)| Point::new(g, h)).transpose()?;
        Some(verify_ledger(t, &reduced, &ledger, point.as_ref())?)
    } else {
        None
    };
    Ok(ReduceReport {
        tuple: t.clone(),
        target,
        reduced,
        ledger,
        verification,
    })
}

fn verification_text(v: &ProportionalityReport) -> String {
    let mode = match v.mode {
        maya::VerifyMode::Symbolic => "symbolic",
        maya::VerifyMode::Instantiated => "instantiated",
    };
    match &v.constant {
        Some(c) => format!("verified ({}), constant {}", mode, c),
        None => format!("NOT proportional ({})", mode),
    }
}

impl Render for ReduceReport {
    fn text(&self) -> String {
        let mut s = format!(
            "{} -> {} [{}]\nshift (dg, dh) = ({}, {})\nprefactor (sin x)^({}) (cos x)^({})\n",
            tuple_text(&self.tuple),
            tuple_text(&self.reduced),
            self.target,
            self.ledger.dg,
            self.ledger.dh,
            self.ledger.pref_s,
            self.ledger.pref_c
        );
        if let Some(v) = &self.verification {
            let _ = writeln!(s, "{}", verification_text(v));
        }
        s
    }

    fn latex(&self) -> String {
        format!(
            "{}(x; g, h) \\propto {}{}\n",
            tuple_latex(&self.tuple),
            tuple_latex(&self.reduced),
            ledger_latex(&self.ledger)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelCheck {
    pub label: SpectrumLabel,
    pub holds: bool,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumChecks {
    #[serde(with = "rational")]
    pub g: Rational,
    #[serde(with = "rational")]
    pub h: Rational,
    pub nonsingular: bool,
    pub levels: Vec<LevelCheck>,
    pub all_hold: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub tuple: StateTuple,
    pub up_to: u32,
    pub levels: Vec<SpectrumEntry>,
    pub checks: Option<SpectrumChecks>,
}

pub fn spectrum_report(
    t: &StateTuple,
    up_to: u32,
    verify: bool,
    inst: Option<(Rational, Rational)>,
) -> crate::error::Result<SpectrumReport> {
    let levels = permitted_spectrum(t, up_to);
    let checks = if verify {
        let point = match inst {
            Some((g, h)) => Point::new(g, h)?,
            None => Point::default_generic(),
        };
        let at = Some((point.g().clone(), point.h().clone()));
        let mut out = Vec::new();
        for e in &levels {
            let check = match e.label.kind {
                SpectrumKind::Bound => verify_eigenfunction(t, e.label.index, at.clone())?,
                SpectrumKind::Extra => {
                    let ell = t
                        .states()
                        .iter()
                        .position(|s| *s == State::iii(e.label.index))
                        .expect("extra levels come from type-III states");
                    verify_extra_eigenstate(t, ell, at.clone())?
                }
            };
            out.push(LevelCheck {
                label: e.label,
                holds: check.holds,
                warnings: check.warnings,
            });
        }
        let nonsingular = check_nonsingular(t, point.g(), point.h())?;
        Some(SpectrumChecks {
            g: point.g().clone(),
            h: point.h().clone(),
            nonsingular,
            all_hold: out.iter().all(|c| c.holds),
            levels: out,
        })
    } else {
        None
    };
    Ok(SpectrumReport {
        tuple: t.clone(),
        up_to,
        levels,
        checks,
    })
}

impl Render for SpectrumReport {
    fn text(&self) -> String {
        let mut s = format!("permitted spectrum of {} up to E_{}:\n", tuple_text(&self.tuple), self.up_to);
        for e in &self.levels {
            let _ = writeln!(s, "  {:<6} = {}", e.label.to_string(), e.eigenvalue);
        }
        if let Some(c) = &self.checks {
            let _ = writeln!(s, "checks at g = {}, h = {}:", rational_to_string(&c.g), rational_to_string(&c.h));
            let _ = writeln!(s, "  potential nonsingular on (0, pi/2): {}", c.nonsingular);
            for l in &c.levels {
                let _ = writeln!(s, "  {}: {}", l.label, if l.holds { "eigenfunction verified" } else { "FAILED" });
                for w in &l.warnings {
                    let _ = writeln!(s, "    warning: {}", w);
                }
            }
        }
        s
    }

    fn latex(&self) -> String {
        let parts: Vec<String> = self
            .levels
            .iter()
            .map(|e| format!("\\mathcal{{E}}_{{{}}}", e.label.energy_index()))
            .collect();
        format!("{}, \\dots\n", parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub reports: Vec<ProportionalityReport>,
    pub all_proportional: bool,
}

impl Render for VerifyReport {
    fn text(&self) -> String {
        let mut s = String::new();
        for r in &self.reports {
            let _ = writeln!(
                s,
                "{} -> {}: shift ({}, {}), prefactor (sin x)^({}) (cos x)^({}): {}",
                tuple_text(&r.before),
                tuple_text(&r.after),
                r.ledger.dg,
                r.ledger.dh,
                r.ledger.pref_s,
                r.ledger.pref_c,
                verification_text(r)
            );
        }
        let _ = writeln!(s, "{}", if self.all_proportional { "all identities hold" } else { "SOME IDENTITIES FAILED" });
        s
    }

    fn latex(&self) -> String {
        let mut s = String::new();
        for r in &self.reports {
            let _ = writeln!(s, "{}(x; g, h) \\propto {}{}", tuple_latex(&r.before), tuple_latex(&r.after), ledger_latex(&r.ledger));
        }
        s
    }
}

impl Render for Equivalence {
    fn text(&self) -> String {
        let mut s = format!(
            "canonical forms: {} and {}\n",
            tuple_text(&self.canonical_first),
            tuple_text(&self.canonical_second)
        );
        match &self.relation {
            Some(l) => {
                let _ = writeln!(
                    s,
                    "equivalent: W[first](g, h) ∝ (sin x)^({}) (cos x)^({}) W[second](g{:+}, h{:+})",
                    l.pref_s, l.pref_c, l.dg, l.dh
                );
            }
            None => {
                let _ = writeln!(s, "not equivalent by division moves");
            }
        }
        s
    }

    fn latex(&self) -> String {
        match &self.relation {
            Some(l) => format!("\\mathrm{{W}}_1(x; g, h) \\propto \\mathrm{{W}}_2{}\n", ledger_latex(l)),
            None => "\\text{not equivalent}\n".into(),
        }
    }
}

/// Reconstructs the tuple reached from `t` by one move; exposed for scripting.
pub fn moved_tuple(t: &StateTuple, which: Which, dir: Direction) -> (StateTuple, Ledger) {
    let d = move_division(&tuple_to_diagrams(t), which, dir);
    (diagrams_to_tuple(&d), d.ledger)
}
