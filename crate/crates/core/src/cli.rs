//! Command-line surface. Commands render into a string so they can be
//! exercised directly from tests; the `wreath` binary only prints.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_rational::BigRational;

use crate::arith::{fmt_rational, gcd, is_prime, wreath_order, Prime};
use crate::error::{Error, Result};
use crate::groups::{conjugacy_classes, nonpower_classes, CatalogKind, ClassStructure, GroupSpec};
use crate::oracle;
use crate::partitions::prob_r_sn;
use crate::series::{
    check_plateau_series, genfun_cc, genfun_cc_r, genfun_partitions, genfun_prob_wreath,
    integer_coeffs, TruncatedSeries,
};
use crate::wreath::{
    class_info, count_classes, count_power_classes_formula, enumerate_types, power_classes,
    preimage_type, prob_r_wreath, verify_plateau,
};

#[derive(Debug, Parser)]
#[command(
    name = "wreath",
    version,
    about = "r-th powers in wreath products G wr S_n"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone, Default)]
pub struct GroupArg {
    /// Group: 1, C:m, S:m, D:m, or a path to a group file
    #[arg(value_name = "GROUP")]
    pub positional: Option<String>,
    /// Same as the positional GROUP
    #[arg(short = 'g', long = "group", value_name = "GROUP")]
    pub flag: Option<String>,
}

impl GroupArg {
    fn spec(&self) -> Option<Result<GroupSpec>> {
        self.flag
            .as_ref()
            .or(self.positional.as_ref())
            .map(|s| s.parse())
    }

    fn resolve(&self) -> Result<(GroupSpec, ClassStructure)> {
        let spec = self
            .spec()
            .ok_or_else(|| Error::Input("a group is required (positional or --group)".into()))??;
        let g = spec.resolve()?;
        Ok((spec, conjugacy_classes(&g)))
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the conjugacy classes of G wr S_n with sizes and centralizers
    Classes {
        #[command(flatten)]
        group: GroupArg,
        #[arg(short = 'n')]
        n: u32,
    },
    /// List the r-th power classes and the power counts
    Powers {
        #[command(flatten)]
        group: GroupArg,
        #[arg(short = 'n')]
        n: u32,
        #[arg(short = 'r')]
        r: u64,
        /// Count by full enumeration; required for composite r
        #[arg(long)]
        brute: bool,
    },
    /// Print generating-function coefficients, one line per degree
    Series {
        which: SeriesKind,
        #[command(flatten)]
        group: GroupArg,
        #[arg(short = 'r')]
        r: Option<u64>,
        #[arg(long)]
        cap: usize,
        /// Number of classes of G (for `cc` without a group)
        #[arg(long = "s")]
        s: Option<usize>,
    },
    /// Cross-check class-level results against enumeration
    Verify {
        target: VerifyTarget,
        #[command(flatten)]
        group: GroupArg,
        #[arg(short = 'r')]
        r: Option<u64>,
        #[arg(short = 'n')]
        n: Option<u32>,
        #[arg(long = "n-max", default_value_t = 6)]
        n_max: u32,
    },
    /// Empirical scan of the conjectured bounds on P_r(G wr S_n)
    Scan {
        question: Question,
        #[arg(short = 'r')]
        r: u64,
        #[arg(short = 'n')]
        n: u32,
        /// Comma-separated groups
        #[arg(long, value_delimiter = ',')]
        groups: Vec<String>,
        /// Use every catalog group of order at most this bound
        #[arg(long = "order-bound")]
        order_bound: Option<u64>,
    },
    /// Count M-th powers by full enumeration (any M >= 1)
    Oracle {
        #[command(flatten)]
        group: GroupArg,
        #[arg(short = 'n')]
        n: u32,
        #[arg(short = 'r')]
        r: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesKind {
    /// 1 + sum P_r(G wr S_n) u^n
    Pr,
    /// class counts of G wr S_n
    Cc,
    /// r-th power class counts of G wr S_n
    Ccr,
    /// partition numbers
    Partitions,
    /// 1 + sum P_r(S_n) u^n
    PrSn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyTarget {
    /// type of g^r elementwise against the power map on types
    #[value(name = "power-type", alias = "lemma-4.2")]
    PowerType,
    /// conjugation orbits against types and class sizes
    #[value(name = "conjugacy", alias = "prop-3.1")]
    Conjugacy,
    /// r-th power classes against the divisibility test, both ways
    #[value(name = "power-classes", alias = "prop-4.3")]
    PowerClasses,
    /// P_r(G wr S_(n+1)) = P_r(G wr S_n) for n != -1 mod r
    #[value(name = "plateau", alias = "theorem-5.4")]
    Plateau,
    /// generating-function coefficients against class-level sums
    #[value(name = "series-vs-enum")]
    SeriesVsEnum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Question {
    /// P_r(S_(n+1)) <= P_r(G wr S_n) <= P_r(S_n)
    Q1,
    /// gap P_r(G wr S_n) - P_r(S_(n+1)) as |G| grows
    Q2,
}

/// Rendered output and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: 0 }
    }
}

/// Exit code for refused or invalid invocations.
pub const EXIT_REFUSED: i32 = 2;

pub fn run(cli: &Cli) -> Outcome {
    match execute(&cli.command) {
        Ok(out) => out,
        Err(e @ Error::Hypothesis(_)) => Outcome {
            text: format!("REFUSED\t{e}\n"),
            code: EXIT_REFUSED,
        },
        Err(e) => Outcome {
            text: format!("error: {e}\n"),
            code: EXIT_REFUSED,
        },
    }
}

/// Parses and runs an argument vector (first item is the program name).
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => Outcome {
            text: e.to_string(),
            code: EXIT_REFUSED,
        },
    }
}

fn prime_arg(r: Option<u64>) -> Result<Prime> {
    Prime::new(r.ok_or_else(|| Error::Input("-r is required".into()))?)
}

fn execute(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Classes { group, n } => cmd_classes(group, *n),
        Command::Powers { group, n, r, brute } => cmd_powers(group, *n, *r, *brute),
        Command::Series {
            which,
            group,
            r,
            cap,
            s,
        } => cmd_series(*which, group, *r, *cap, *s),
        Command::Verify {
            target,
            group,
            r,
            n,
            n_max,
        } => cmd_verify(*target, group, *r, *n, *n_max),
        Command::Scan {
            question,
            r,
            n,
            groups,
            order_bound,
        } => cmd_scan(*question, *r, *n, groups, *order_bound),
        Command::Oracle { group, n, r } => cmd_oracle(group, *n, *r),
    }
}

fn cmd_classes(group: &GroupArg, n: u32) -> Result<Outcome> {
    if n == 0 {
        return Err(Error::Input("-n must be at least 1".into()));
    }
    let (_, cs) = group.resolve()?;
    let mut out = String::from("type\tperm_type\tclass_size\tcentralizer\n");
    let types = enumerate_types(cs.num_classes(), n);
    for t in &types {
        let info = class_info(t, &cs);
        let _ = writeln!(
            out,
            "{t}\t{}\t{}\t{}",
            t.perm_type(),
            info.class_size,
            info.centralizer_size
        );
    }
    let _ = writeln!(
        out,
        "CC\t{}\torder\t{}",
        types.len(),
        wreath_order(cs.group_order(), n)
    );
    Ok(Outcome::ok(out))
}

fn cmd_powers(group: &GroupArg, n: u32, r: u64, brute: bool) -> Result<Outcome> {
    let (_, cs) = group.resolve()?;
    if !is_prime(r) {
        if !brute {
            return Err(Error::NotPrime(r));
        }
        return cmd_oracle_cs(&cs, n, r);
    }
    if n == 0 {
        return Err(Error::Input("-n must be at least 1".into()));
    }
    let r = Prime::new(r)?;
    let lab = nonpower_classes(&cs, r);
    let mut out = String::from("type\tperm_type\tclass_size\troot_type\n");
    let classes = power_classes(&cs, n, r);
    let mut omega = BigUint::from(0u32);
    for t in &classes {
        let info = class_info(t, &cs);
        let root = preimage_type(t, &lab)?;
        let _ = writeln!(out, "{t}\t{}\t{}\t{root}", t.perm_type(), info.class_size);
        omega += info.class_size;
    }
    let formula = count_power_classes_formula(&cs, n, r);
    let _ = writeln!(out, "CC_r(filter)\t{}", classes.len());
    let _ = writeln!(out, "CC_r(formula)\t{formula}");
    let _ = writeln!(out, "|omega_r|\t{omega}");
    let p = BigRational::new(
        omega.clone().into(),
        wreath_order(cs.group_order(), n).into(),
    );
    let _ = writeln!(out, "P_r\t{}", fmt_rational(&p));
    let mut code = 0;
    if formula != BigUint::from(classes.len()) {
        let _ = writeln!(
            out,
            "FAIL\tinternal: filter and formula class counts differ"
        );
        code = 1;
    }
    if brute {
        let count = oracle::power_image_count(cs.group(), n, r.get() as u64)?;
        let agree = BigUint::from(count) == omega;
        let _ = writeln!(out, "|omega_r|(oracle)\t{count}");
        if !agree {
            let _ = writeln!(out, "FAIL\toracle count differs from the class-level count");
            code = 1;
        }
    }
    Ok(Outcome { text: out, code })
}

fn cmd_oracle(group: &GroupArg, n: u32, m: u64) -> Result<Outcome> {
    let (_, cs) = group.resolve()?;
    cmd_oracle_cs(&cs, n, m)
}

fn cmd_oracle_cs(cs: &ClassStructure, n: u32, m: u64) -> Result<Outcome> {
    if m == 0 {
        return Err(Error::Input("exponent must be at least 1".into()));
    }
    let count = oracle::power_image_count(cs.group(), n, m)?;
    let p = oracle::power_probability(cs.group(), n, m)?;
    let mut out = String::from("# brute-force enumeration\n");
    let _ = writeln!(out, "order\t{}", wreath_order(cs.group_order(), n));
    let _ = writeln!(out, "|omega_{m}|\t{count}");
    let _ = writeln!(out, "P_{m}\t{}", fmt_rational(&p));
    Ok(Outcome::ok(out))
}

fn render_counts(f: &TruncatedSeries) -> Result<String> {
    let mut out = String::new();
    for (k, c) in integer_coeffs(f)?.iter().enumerate() {
        let _ = writeln!(out, "{k}\t{c}");
    }
    Ok(out)
}

fn cmd_series(
    which: SeriesKind,
    group: &GroupArg,
    r: Option<u64>,
    cap: usize,
    s: Option<usize>,
) -> Result<Outcome> {
    if cap == 0 {
        return Err(Error::Input("--cap must be at least 1".into()));
    }
    match which {
        SeriesKind::Partitions => Ok(Outcome::ok(render_counts(&genfun_partitions(cap))?)),
        SeriesKind::Cc => {
            let s = match (s, group.spec()) {
                (Some(s), _) => s,
                (None, Some(_)) => group.resolve()?.1.num_classes(),
                (None, None) => return Err(Error::Input("cc needs --s or a group".into())),
            };
            if s == 0 {
                return Err(Error::Input("--s must be at least 1".into()));
            }
            Ok(Outcome::ok(render_counts(&genfun_cc(s, cap))?))
        }
        SeriesKind::Ccr => {
            let r = prime_arg(r)?;
            let (_, cs) = group.resolve()?;
            Ok(Outcome::ok(render_counts(&genfun_cc_r(&cs, r, cap))?))
        }
        SeriesKind::Pr | SeriesKind::PrSn => {
            let r = prime_arg(r)?;
            let cs = if which == SeriesKind::PrSn {
                conjugacy_classes(&GroupSpec::Catalog(CatalogKind::Trivial, 1).resolve()?)
            } else {
                group.resolve()?.1
            };
            let f = genfun_prob_wreath(&cs, r, cap);
            let mut out = f.to_string();
            let mut code = 0;
            if gcd(r.get() as u64, cs.group_order()) == 1 {
                let bad = check_plateau_series(&f, r);
                if bad.is_empty() {
                    out.push_str("plateau\tPASS\n");
                } else {
                    let ks: Vec<String> = bad.iter().map(usize::to_string).collect();
                    let _ = writeln!(out, "plateau\tFAIL\t{}", ks.join(","));
                    code = 1;
                }
            } else {
                out.push_str("plateau\tnot checked: gcd(r, |G|) != 1\n");
            }
            Ok(Outcome { text: out, code })
        }
    }
}

fn report_line(out: &mut String, label: &str, rep: &oracle::OracleReport) -> bool {
    let status = if rep.passed() { "PASS" } else { "FAIL" };
    let _ = writeln!(out, "{status}\t{label}\tchecked={}", rep.checked);
    for f in &rep.failures {
        let _ = writeln!(out, "FAIL\t{f}");
    }
    rep.passed()
}

fn cmd_verify(
    target: VerifyTarget,
    group: &GroupArg,
    r: Option<u64>,
    n: Option<u32>,
    n_max: u32,
) -> Result<Outcome> {
    let (spec, cs) = group.resolve()?;
    let need_n = || n.ok_or_else(|| Error::Input("-n is required for this check".into()));
    let mut out = String::new();
    let ok = match target {
        VerifyTarget::PowerType => {
            let (r, n) = (prime_arg(r)?, need_n()?);
            let rep = oracle::verify_power_types(&cs, n, r)?;
            report_line(&mut out, &format!("power-type\t{spec}\tn={n}\tr={r}"), &rep)
        }
        VerifyTarget::Conjugacy => {
            let n = need_n()?;
            let rep = oracle::verify_conjugacy_types(&cs, n)?;
            report_line(&mut out, &format!("conjugacy\t{spec}\tn={n}"), &rep)
        }
        VerifyTarget::PowerClasses => {
            let (r, n) = (prime_arg(r)?, need_n()?);
            let rep = oracle::verify_power_characterization(&cs, n, r)?;
            report_line(
                &mut out,
                &format!("power-classes\t{spec}\tn={n}\tr={r}"),
                &rep,
            )
        }
        VerifyTarget::Plateau => {
            let r = prime_arg(r)?;
            let rep = verify_plateau(&cs, r, n_max)?;
            for row in &rep.rows {
                let status = if row.holds() { "PASS" } else { "FAIL" };
                let _ = writeln!(
                    out,
                    "{status}\tn={}\tP(n)={}\tP(n+1)={}",
                    row.n,
                    fmt_rational(&row.prob_n),
                    fmt_rational(&row.prob_next)
                );
            }
            let status = if rep.passed() { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{status}\tplateau\t{spec}\tr={r}\tn-max={n_max}");
            rep.passed()
        }
        VerifyTarget::SeriesVsEnum => {
            let r = prime_arg(r)?;
            let cap = n_max as usize;
            let pr = genfun_prob_wreath(&cs, r, cap);
            let cc = genfun_cc(cs.num_classes(), cap);
            let ccr = genfun_cc_r(&cs, r, cap);
            let mut all = true;
            for k in 1..=n_max {
                let p = prob_r_wreath(&cs, k, r);
                let classes = BigRational::from_integer(count_classes(cs.num_classes(), k).into());
                let filter = BigRational::from_integer(power_classes(&cs, k, r).len().into());
                let ok = pr.coeff(k as usize) == &p
                    && cc.coeff(k as usize) == &classes
                    && ccr.coeff(k as usize) == &filter;
                all &= ok;
                let _ = writeln!(
                    out,
                    "{}\tn={k}\tP_r={}\tCC={}\tCC_r={}",
                    if ok { "PASS" } else { "FAIL" },
                    fmt_rational(&p),
                    classes.to_integer(),
                    filter.to_integer()
                );
            }
            let _ = writeln!(
                out,
                "{}\tseries-vs-enum\t{spec}\tr={r}\tn-max={n_max}",
                if all { "PASS" } else { "FAIL" }
            );
            all
        }
    };
    Ok(Outcome {
        text: out,
        code: if ok { 0 } else { 1 },
    })
}

/// Catalog groups of order at most `bound`, without repeats of the small
/// coincidences (S:1 = C:1, S:2 = D:1 = C:2).
pub fn catalog_up_to(bound: u64) -> Vec<GroupSpec> {
    let mut out = vec![GroupSpec::Catalog(CatalogKind::Trivial, 1)];
    for m in 2..=bound {
        out.push(GroupSpec::Catalog(CatalogKind::Cyclic, m as u32));
    }
    for m in 2..=bound / 2 {
        out.push(GroupSpec::Catalog(CatalogKind::Dihedral, m as u32));
    }
    for (m, order) in [(3u32, 6u64), (4, 24), (5, 120), (6, 720)] {
        if order <= bound {
            out.push(GroupSpec::Catalog(CatalogKind::Symmetric, m));
        }
    }
    out
}

fn cmd_scan(
    question: Question,
    r: u64,
    n: u32,
    groups: &[String],
    order_bound: Option<u64>,
) -> Result<Outcome> {
    let r = Prime::new(r)?;
    let rv = r.get() as u64;
    if n == 0 {
        return Err(Error::Input("-n must be at least 1".into()));
    }
    if question == Question::Q1 && !(n as u64 + 1).is_multiple_of(rv) {
        return Err(Error::Hypothesis(format!(
            "n = {n} is not congruent to -1 mod {rv}"
        )));
    }
    let mut rows: Vec<(u64, String, ClassStructure)> = Vec::new();
    for g in groups {
        let spec: GroupSpec = g.parse()?;
        let cs = conjugacy_classes(&spec.resolve()?);
        if gcd(rv, cs.group_order()) != 1 {
            return Err(Error::Hypothesis(format!(
                "gcd({rv}, |{spec}|) = gcd({rv}, {}) != 1",
                cs.group_order()
            )));
        }
        rows.push((cs.group_order(), spec.to_string(), cs));
    }
    if let Some(bound) = order_bound {
        for spec in catalog_up_to(bound) {
            let cs = conjugacy_classes(&spec.resolve()?);
            if gcd(rv, cs.group_order()) == 1
                && !rows.iter().any(|(_, s, _)| *s == spec.to_string())
            {
                rows.push((cs.group_order(), spec.to_string(), cs));
            }
        }
    }
    if rows.is_empty() {
        return Err(Error::Input(
            "no groups given (use --groups or --order-bound)".into(),
        ));
    }
    rows.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));

    let upper = prob_r_sn(n, r);
    let lower = prob_r_sn(n + 1, r);
    let mut out = String::from("# EMPIRICAL scan; no theorem is asserted\n");
    match question {
        Question::Q1 => {
            let _ = writeln!(
                out,
                "group\torder\tP_r(S_n+1)\tP_r(GwrS_n)\tP_r(S_n)\tviolation"
            );
            for (order, name, cs) in &rows {
                let p = prob_r_wreath(cs, n, r);
                let violated = p < lower || p > upper;
                let _ = writeln!(
                    out,
                    "{name}\t{order}\t{}\t{}\t{}\t{}",
                    fmt_rational(&lower),
                    fmt_rational(&p),
                    fmt_rational(&upper),
                    if violated { "yes" } else { "no" }
                );
            }
        }
        Question::Q2 => {
            let _ = writeln!(out, "group\torder\tP_r(GwrS_n)\tP_r(S_n+1)\tgap");
            for (order, name, cs) in &rows {
                let p = prob_r_wreath(cs, n, r);
                let gap = &p - &lower;
                let _ = writeln!(
                    out,
                    "{name}\t{order}\t{}\t{}\t{}",
                    fmt_rational(&p),
                    fmt_rational(&lower),
                    fmt_rational(&gap)
                );
            }
        }
    }
    Ok(Outcome::ok(out))
}
