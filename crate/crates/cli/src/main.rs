use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use rcomb::compositions::{composition_counts, family_parts, two_comb_parts, verify_composition_correspondence, Family, PartSet};
use rcomb::count::{count_subsets_fast, count_subsets_oracle};
use rcomb::digraph::{build_digraph, classify_structure, CycleStructure};
use rcomb::genfunc::{recurrence_to_gf, s_gf_from_b_gf};
use rcomb::permutations::{
    count_restricted_permutations, count_restricted_permutations_by_excedance, verify_closed_forms, verify_swap_window, verify_theorem_bij,
    DisplacementSet,
};
use rcomb::recurrence::{recurrence_for, verify_recurrence};
use rcomb::report::Report;
use rcomb::subword::{
    count_equivalence_classes, equivalence_gf, has_no_short_period, qset_from_subword, verify_equivalence_classes,
    verify_subword_qset_properties, Subword,
};
use rcomb::tiling::verify_s_equals_b;
use rcomb::transfer::transfer_matrix_gf;
use rcomb::{Error, QSet, RationalGF};

/// Restricted combinations, comb tilings and their bijections.
#[derive(Parser)]
#[command(name = "rcl", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Largest n to compute.
    #[arg(long = "n", default_value_t = 20)]
    n: usize,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// S_n (or the S_{n,k} triangle) for a difference set such as `1,2,4`.
    Count {
        q: String,
        /// `t` selects the triangle, as in `rcl 1,2,4 t`.
        mode: Option<String>,
        #[command(flatten)]
        common: Common,
        /// Print rows S_{n,0} S_{n,1} ... stopped at the first zero.
        #[arg(long)]
        triangle: bool,
        /// Use the brute-force subset scan instead of the state recursion.
        #[arg(long)]
        oracle: bool,
    },
    /// The metatile-generating digraph of the comb.
    Digraph {
        q: String,
        /// Graphviz output.
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        json: bool,
    },
    /// Recursion for B_n and B_{n,k}, or the transfer-matrix function.
    Recurrence {
        q: String,
        #[command(flatten)]
        common: Common,
    },
    /// Generating function of S_n (or B_n with --tilings).
    Gf {
        q: String,
        #[command(flatten)]
        common: Common,
        /// Report the tiling function B(x) instead of S(x).
        #[arg(long)]
        tilings: bool,
    },
    /// Compositions for a comb family: `per:l,g,r,t`, `per2:l,g,m,h,r,t`,
    /// `compwb:p,q`, `min1arc:Q` or `two-comb:Q`.
    Compositions {
        family: String,
        #[command(flatten)]
        common: Common,
    },
    /// Permutations with displacements in a set such as `-1,0,1`.
    Permutations {
        #[arg(allow_hyphen_values = true)]
        d: String,
        #[command(flatten)]
        common: Common,
        /// Refine by number of excedances.
        #[arg(long)]
        triangle: bool,
    },
    /// Equivalence classes of binary words under a subword such as `10010`.
    Subword {
        w: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run a named check: s-equals-b Q, recurrence Q, bijection m,j,
    /// closed-forms m,j, swap-window m, compositions FAMILY, subword W.
    Verify {
        check: String,
        arg: String,
        #[command(flatten)]
        common: Common,
    },
}

enum Failure {
    Lib(Error),
    Usage(String),
    Check(Report),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Out = Result<String, Failure>;

fn qset(text: &str) -> Result<QSet, Failure> {
    Ok(QSet::parse(text)?)
}

fn integers(text: &str, count: usize) -> Result<Vec<u32>, Failure> {
    let values: Vec<u32> = text
        .split(',')
        .map(|t| {
            t.trim().parse::<u32>().map_err(|_| {
                Failure::Lib(Error::Parse {
                    token: t.to_string(),
                    reason: "not a nonnegative integer".into(),
                })
            })
        })
        .collect::<Result<_, _>>()?;
    if values.len() != count {
        return Err(Failure::Usage(format!("expected {count} comma-separated integers, got `{text}`")));
    }
    Ok(values)
}

fn lines<T: ToString>(values: impl IntoIterator<Item = T>) -> String {
    values.into_iter().map(|v| v.to_string() + "\n").collect()
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize") + "\n"
}

fn count(q: &str, c: &Common, triangle: bool, oracle: bool) -> Out {
    let q = qset(q)?;
    let table = if oracle {
        count_subsets_oracle(&q, c.n, triangle)?
    } else {
        count_subsets_fast(&q, c.n, triangle)?
    };
    Ok(if c.json {
        let mut v = table.to_json();
        v["qset"] = q.to_json();
        pretty(&v)
    } else {
        table.render()
    })
}

fn structure(q: &str) -> Result<(QSet, CycleStructure), Failure> {
    let q = qset(q)?;
    let g = build_digraph(&q.comb())?;
    Ok((q, classify_structure(&g)))
}

fn digraph(q: &str, dot: bool, json: bool) -> Out {
    let (_, cs) = structure(q)?;
    let g = &cs.digraph;
    if dot {
        return Ok(g.export_dot());
    }
    if json {
        return Ok(pretty(&cs.to_json()));
    }
    let mut out = format!("{}: {} nodes, {}\n", g.comb(), g.nodes().len(), cs.class);
    for arc in g.arcs() {
        out += &format!("{} -{}-> {}\n", g.node_label(arc.source), arc.label(), g.node_label(arc.target));
    }
    for (name, cycles) in [("inner", &cs.inner), ("outer", &cs.outer), ("circuit", &cs.circuits)] {
        for c in cycles {
            out += &format!("{name} {} (length {})\n", g.word(c), c.length);
        }
    }
    if let Some(p) = cs.common {
        out += &format!("common node {}\n", g.node_label(p));
    }
    for e in &cs.errant {
        out += &format!("errant loop at {}\n", g.node_label(e.node));
    }
    Ok(out)
}

fn recurrence(q: &str, c: &Common) -> Out {
    let (q, cs) = structure(q)?;
    match recurrence_for(&cs) {
        Ok((uni, bi)) => Ok(if c.json {
            pretty(&json!({
                "qset": q.to_json(),
                "class": cs.class.to_string(),
                "recurrence": uni.to_json(),
                "bivariate": bi.to_json(),
                "terms": uni.evaluate(c.n).iter().map(|v| json!(v.to_string())).collect::<Vec<_>>(),
            }))
        } else {
            format!("{}\n{uni}\n{bi}\n", cs.class)
        }),
        Err(Error::WrongClass { .. }) => {
            let f = transfer_matrix_gf(&cs.digraph)?;
            Ok(if c.json {
                pretty(&json!({ "qset": q.to_json(), "class": cs.class.to_string(), "transfer": f.to_json() }))
            } else {
                format!("{}\nB(x,y) = {f}\n", cs.class)
            })
        }
        Err(e) => Err(e.into()),
    }
}

fn tiling_gf(cs: &CycleStructure) -> Result<RationalGF, Failure> {
    match recurrence_for(cs) {
        Ok((uni, _)) => Ok(recurrence_to_gf(&uni)),
        Err(Error::WrongClass { .. }) => Ok(transfer_matrix_gf(&cs.digraph)?.at_y_one()?),
        Err(e) => Err(e.into()),
    }
}

fn gf(q: &str, c: &Common, tilings: bool) -> Out {
    let (q, cs) = structure(q)?;
    let gb = tiling_gf(&cs)?;
    let f = if tilings { gb } else { s_gf_from_b_gf(&gb, q.q() as usize)? }.reduced();
    Ok(if c.json {
        let series: Vec<String> = f.series(c.n).iter().map(ToString::to_string).collect();
        pretty(&json!({ "qset": q.to_json(), "gf": f.to_json(), "text": f.to_string(), "series": series }))
    } else {
        format!("{f}\n")
    })
}

fn family(text: &str) -> Result<(QSet, PartSet), Failure> {
    let (kind, args) = text
        .split_once(':')
        .ok_or_else(|| Failure::Usage(format!("expected KIND:ARGS, got `{text}`")))?;
    let fam = match kind {
        "per" => {
            let v = integers(args, 4)?;
            Family::Per { l: v[0], g: v[1], r: v[2], t: v[3] }
        }
        "per2" => {
            let v = integers(args, 6)?;
            Family::Per2 { l: v[0], g: v[1], m: v[2], h: v[3], r: v[4], t: v[5] }
        }
        "compwb" => {
            let v = integers(args, 2)?;
            Family::Compwb { p: v[0], q: v[1] }
        }
        "min1arc" => Family::Min1arc(qset(args)?),
        "two-comb" => {
            let q = qset(args)?;
            let parts = two_comb_parts(&q.comb())?;
            return Ok((q, parts));
        }
        _ => return Err(Failure::Usage(format!("unknown family `{kind}`"))),
    };
    Ok(family_parts(&fam)?)
}

fn compositions(text: &str, c: &Common) -> Out {
    let (q, parts) = family(text)?;
    let qq = q.q() as usize;
    let counts = composition_counts(&parts, c.n + qq)?;
    let shown = &counts[qq..];
    Ok(if c.json {
        pretty(&json!({
            "qset": q.to_json(),
            "parts": parts.to_string(),
            "counts": shown.iter().map(ToString::to_string).collect::<Vec<_>>(),
        }))
    } else {
        format!("Q = {q}\nparts: {parts}\n{}", lines(shown))
    })
}

fn permutations(d: &str, c: &Common, triangle: bool) -> Out {
    let d = DisplacementSet::parse(d)?;
    let rows = (0..=c.n)
        .map(|n| count_restricted_permutations_by_excedance(&d, n))
        .collect::<Result<Vec<_>, _>>()?;
    let totals = (0..=c.n)
        .map(|n| count_restricted_permutations(&d, n))
        .collect::<Result<Vec<_>, _>>()?;
    if c.json {
        let rows: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
        return Ok(pretty(&json!({
            "displacements": d.values(),
            "totals": totals.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "by_excedances": rows,
        })));
    }
    Ok(if triangle {
        rows.iter()
            .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ") + "\n")
            .collect()
    } else {
        lines(totals)
    })
}

fn subword(w: &str, c: &Common) -> Out {
    let w = Subword::parse(w)?;
    let (q, admissible) = qset_from_subword(&w);
    let gf = equivalence_gf(&w).ok();
    let classes: Vec<u64> = (0..=c.n)
        .map(|n| count_equivalence_classes(&w, n).map(|e| e.total))
        .collect::<Result<_, _>>()?;
    let short_free = has_no_short_period(&w);
    if c.json {
        return Ok(pretty(&json!({
            "subword": w.to_string(),
            "qset": q.to_json(),
            "admissible": admissible,
            "no_short_period": short_free,
            "gf": gf.as_ref().map(|f| f.to_string()),
            "classes": classes,
        })));
    }
    let mut out = format!("Q = {q}\nadmissible: {admissible}\nno period up to l/2: {short_free}\n");
    if let Some(f) = gf {
        out += &format!("gf: {f}\n");
    }
    out += &lines(classes);
    Ok(out)
}

fn pair(text: &str) -> Result<(usize, usize), Failure> {
    let v = integers(text, 2)?;
    Ok((v[0] as usize, v[1] as usize))
}

fn verify(check: &str, arg: &str, c: &Common) -> Out {
    let report = match check {
        "s-equals-b" => verify_s_equals_b(&qset(arg)?, c.n)?,
        "recurrence" => verify_recurrence(&qset(arg)?, c.n)?,
        "bijection" => {
            let (m, j) = pair(arg)?;
            verify_theorem_bij(m, j, c.n)?
        }
        "closed-forms" => {
            let (m, j) = pair(arg)?;
            verify_closed_forms(m, j, c.n)?
        }
        "swap-window" => verify_swap_window(integers(arg, 1)?[0] as usize, c.n)?,
        "compositions" => {
            let (q, parts) = family(arg)?;
            verify_composition_correspondence(&q, &parts, c.n)?
        }
        "subword" => {
            let w = Subword::parse(arg)?;
            let mut r = verify_equivalence_classes(&w, c.n)?;
            let props = verify_subword_qset_properties(&w);
            r.cases += props.cases;
            r.mismatches.extend(props.mismatches);
            r
        }
        _ => return Err(Failure::Usage(format!("unknown check `{check}`"))),
    };
    let text = if c.json { pretty(&report.to_json()) } else { format!("{report}\n") };
    if report.passed() {
        Ok(text)
    } else {
        print!("{text}");
        Err(Failure::Check(report))
    }
}

fn run(cli: Cli) -> Out {
    match cli.command {
        Command::Count { q, mode, common, triangle, oracle } => match mode.as_deref() {
            None => count(&q, &common, triangle, oracle),
            Some("t") => count(&q, &common, true, oracle),
            Some(other) => Err(Failure::Usage(format!("unknown mode `{other}`, expected `t`"))),
        },
        Command::Digraph { q, dot, json } => digraph(&q, dot, json),
        Command::Recurrence { q, common } => recurrence(&q, &common),
        Command::Gf { q, common, tilings } => gf(&q, &common, tilings),
        Command::Compositions { family, common } => compositions(&family, &common),
        Command::Permutations { d, common, triangle } => permutations(&d, &common, triangle),
        Command::Subword { w, common } => subword(&w, &common),
        Command::Verify { check, arg, common } => verify(&check, &arg, &common),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Check(report)) => {
            if let Some(m) = report.first_failure() {
                eprintln!("counterexample: {m}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Lib(e @ Error::Capacity { .. })) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
