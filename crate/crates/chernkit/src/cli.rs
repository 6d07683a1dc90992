use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use chernkit_core::algebra::Rational;
use chernkit_core::ch_oracle::{CHState, SeveriOracle};
use chernkit_core::chern::ChernVector;
use chernkit_core::cobordism::{basis_element, check_triangular, decompose_with, dpr_check, pairing_matrix};
use chernkit_core::icis::{determinacy_bound, length_n, singularity_table, tjurina, GermMap, DEFAULT_TRUNCATION_CAP, STANDARD_LABELS};
use chernkit_core::partitions::{enumerate_partition_lists, PartitionList, Signature, DEFAULT_MAX_N};
use chernkit_core::series::{
    degeneration_identity_check, exp_series, to_surface_names, universal_polynomial, CoeffTable, TypeMultiset,
};
use chernkit_core::Error;

use crate::formats::{load_chern_vector, load_geometry, load_relation, load_table, ChernVectorFile, SingularityTableFile};

#[derive(Parser, Debug)]
#[command(name = "chernkit", version, about = "Chern numbers, cobordism bases, ICIS invariants and generating series")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct SignatureArgs {
    /// Dimension n.
    #[arg(long)]
    pub n: u32,
    /// Number of divisors.
    #[arg(long, default_value_t = 0)]
    pub s: u32,
    /// Comma-separated bundle ranks, e.g. `2,1`.
    #[arg(long, value_delimiter = ',')]
    pub ranks: Vec<u32>,
    /// Refuse dimensions above this.
    #[arg(long, default_value_t = DEFAULT_MAX_N)]
    pub cap: u32,
}

impl SignatureArgs {
    fn signature(&self) -> Result<Signature> {
        Ok(Signature::capped(self.n, self.s, self.ranks.clone(), self.cap)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Names {
    /// Chern-number variables such as `[c1T*c1E1]`.
    Chern,
    /// `L², LK, c1², c2, D², DL, DK` (signature n=2 s=1 ranks=1 only).
    Surface,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the partition-list basis and its geometric representatives.
    Basis {
        #[command(flatten)]
        sig: SignatureArgs,
        #[arg(long)]
        json: bool,
    },
    /// Chern numbers of a geometry file.
    Chern {
        geometry: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Pairing matrix between basis elements and Chern monomials.
    PairingMatrix {
        #[command(flatten)]
        sig: SignatureArgs,
        #[arg(long)]
        json: bool,
    },
    /// Coordinates of a chern-vector or geometry file in the basis.
    Decompose {
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Invariants of a germ such as `x^2 + y^3` (comma-separated components).
    Icis {
        /// Germ; omit with `--table`.
        germ: Option<String>,
        /// Comma-separated variable names (default: identifiers, sorted).
        #[arg(long, value_delimiter = ',')]
        vars: Vec<String>,
        /// Use this truncation order instead of the determinacy bound.
        #[arg(long)]
        k: Option<u32>,
        /// Print the standard singularity table.
        #[arg(long)]
        table: bool,
        #[arg(long)]
        json: bool,
    },
    /// Coefficient of `y_β z_δ`: a number for a geometry, a polynomial otherwise.
    Count {
        /// Types such as `A1:2,tan2` or `(tan2 | A1:2)`.
        #[arg(long)]
        types: String,
        /// Geometry or chern-vector file.
        #[arg(long)]
        geometry: Option<PathBuf>,
        /// Coefficient table file (default: shipped surface table).
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Names::Chern)]
        names: Names,
        #[arg(long)]
        json: bool,
    },
    /// Severi degree `N^{d,δ}(α, β)` from the Caporaso–Harris recursion.
    Severi {
        d: u32,
        delta: u32,
        /// Assigned tangencies `α_1,α_2,...`.
        #[arg(long, value_delimiter = ',')]
        alpha: Vec<u32>,
        /// Free tangencies `β_1,β_2,...` (default: `β = (d)`).
        #[arg(long, value_delimiter = ',')]
        beta: Vec<u32>,
        /// Tabulate `N^{e,γ}` for `e ≤ d`, `γ ≤ δ`.
        #[arg(long)]
        upto: bool,
        #[arg(long)]
        json: bool,
    },
    /// Check a double point relation file.
    VerifyDpr { relation: PathBuf },
}

fn pretty(v: serde_json::Value) -> String {
    serde_json::to_string_pretty(&v).expect("json values serialize") + "\n"
}

fn list_parts(p: &PartitionList) -> Vec<Vec<u32>> {
    p.lists().map(|l| l.parts().to_vec()).collect::<Vec<_>>().into_iter().fold(
        vec![p.lambda().parts().to_vec()],
        |mut acc, l| {
            acc.push(l);
            acc
        },
    )
}

/// Parses the nested-array form `[[λ], [π_1], …, [μ_1], …]` printed by `basis`.
pub fn parse_basis_index(src: &str, sig: &Signature) -> Result<PartitionList> {
    use chernkit_core::partitions::Partition;
    let arrays: Vec<Vec<u32>> = serde_json::from_str(src).context("basis index must be a nested integer array")?;
    let Some((lambda, lists)) = arrays.split_first() else { bail!("empty basis index") };
    if lists.len() != sig.num_lists() {
        bail!("basis index has {} lists, {sig} needs {}", lists.len(), sig.num_lists());
    }
    let to_p = |v: &Vec<u32>| Partition::new(v.clone());
    let s = sig.s as usize;
    Ok(PartitionList::new(
        to_p(lambda)?,
        lists[..s].iter().map(to_p).collect::<Result<_, _>>()?,
        lists[s..].iter().map(to_p).collect::<Result<_, _>>()?,
        &sig.ranks,
    )?)
}

fn basis(sig: &Signature, json: bool) -> Result<String> {
    let mut rows = Vec::new();
    for idx in enumerate_partition_lists(sig) {
        let e = basis_element(&idx, sig)?;
        rows.push((serde_json::to_string(&list_parts(&idx))?, idx.to_string(), e.to_string()));
    }
    if json {
        let items: Vec<_> = rows
            .iter()
            .map(|(i, n, e)| json!({"index": serde_json::from_str::<serde_json::Value>(i).unwrap(), "name": n, "element": e}))
            .collect();
        return Ok(pretty(json!({"signature": sig.to_string(), "size": rows.len(), "basis": items})));
    }
    let mut out = format!("# {sig}, {} elements\n", rows.len());
    for (i, n, e) in rows {
        writeln!(out, "{i}\t{n}\t{e}")?;
    }
    Ok(out)
}

fn vector_json(v: &ChernVector) -> serde_json::Value {
    let values: serde_json::Map<String, serde_json::Value> =
        v.iter().map(|(m, x)| (m.name(), json!(x.to_string()))).collect();
    json!({"signature": v.signature().to_string(), "values": values})
}

fn chern(path: &Path, json: bool) -> Result<String> {
    let v = load_geometry(path)?.chern_vector()?;
    if json {
        return Ok(pretty(vector_json(&v)));
    }
    Ok(toml::to_string(&ChernVectorFile::from_vector(&v))?)
}

fn aligned(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|j| rows.iter().filter_map(|r| r.get(j)).map(|c| c.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> =
            r.iter().enumerate().map(|(j, c)| format!("{}{c}", " ".repeat(widths[j] - c.chars().count()))).collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn pairing(sig: &Signature, json: bool) -> Result<String> {
    let pm = pairing_matrix(sig)?;
    let det = pm.determinant()?;
    let tri = check_triangular(&pm);
    let cell = |i: usize, j: usize| pm.matrix[(i, j)].to_string();
    if json {
        let matrix: Vec<Vec<String>> = (0..pm.size()).map(|i| (0..pm.size()).map(|j| cell(i, j)).collect()).collect();
        return Ok(pretty(json!({
            "signature": sig.to_string(),
            "rows": pm.rows.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            "cols": pm.cols.iter().map(|c| c.name()).collect::<Vec<_>>(),
            "matrix": matrix,
            "determinant": det.to_string(),
            "triangular": tri,
        })));
    }
    let mut rows = vec![std::iter::once(String::new()).chain(pm.cols.iter().map(|c| c.name())).collect::<Vec<_>>()];
    for (i, r) in pm.rows.iter().enumerate() {
        rows.push(std::iter::once(r.to_string()).chain((0..pm.size()).map(|j| cell(i, j))).collect());
    }
    Ok(format!("# {sig}\n{}determinant = {det}\ntriangular = {tri}\n", aligned(&rows)))
}

fn decompose(path: &Path, json: bool) -> Result<String> {
    let v = load_chern_vector(path)?;
    let pm = pairing_matrix(v.signature())?;
    let coords = decompose_with(&pm, &v)?;
    if json {
        let items: Vec<_> = coords.iter().map(|(i, x)| json!({"index": i.to_string(), "coefficient": x.to_string()})).collect();
        return Ok(pretty(json!({"signature": v.signature().to_string(), "coordinates": items})));
    }
    let rows: Vec<Vec<String>> = coords.iter().map(|(i, x)| vec![i.to_string(), x.to_string()]).collect();
    Ok(aligned(&rows))
}

/// Renders the standard singularity table as TOML.
pub fn render_singularity_table() -> Result<String> {
    SingularityTableFile::from_rows(&singularity_table(STANDARD_LABELS)?).render()
}

fn icis(germ: Option<&str>, vars: &[String], k: Option<u32>, table: bool, json: bool) -> Result<String> {
    if table {
        return render_singularity_table();
    }
    let Some(src) = germ else { bail!("give a germ or --table") };
    let f = if vars.is_empty() {
        GermMap::parse(src)?
    } else {
        GermMap::parse_in(src, &vars.iter().map(String::as_str).collect::<Vec<_>>())?
    };
    let tau = tjurina(&f, DEFAULT_TRUNCATION_CAP)?;
    let k = match k {
        Some(k) => Some(k),
        None => match determinacy_bound(&f) {
            Ok(k) => Some(k),
            Err(Error::Unsupported(_)) => None,
            Err(e) => return Err(e.into()),
        },
    };
    let n = k.map(|k| length_n(&f, k));
    if json {
        return Ok(pretty(json!({"germ": f.to_string(), "tau": tau, "k": k, "N": n, "dim_p": f.dim_p()})));
    }
    let mut out = format!("germ = {f}\ntau = {tau}\n");
    match (k, n) {
        (Some(k), Some(n)) => write!(out, "k = {k}\nN = {n}\n")?,
        _ => out.push_str("k = unsupported for several components (pass --k)\n"),
    }
    writeln!(out, "dim_p = {}", f.dim_p())?;
    Ok(out)
}

/// A fixed table with nonzero entries on a few multisets, for any signature.
pub fn generic_table(sig: &Signature) -> Result<CoeffTable> {
    let mut t = CoeffTable::new(sig.clone());
    let monomials = chernkit_core::cobordism::ordered_monomials(sig);
    for (j, key) in ["( | A1)", "( | A1:2)", "(tan2 | A1)", "(tan2 | )"].iter().enumerate() {
        let src: Vec<String> =
            monomials.iter().enumerate().map(|(i, m)| format!("{}*{}", (i + 2 * j) % 5 + 1, m.name())).collect();
        if src.is_empty() {
            break;
        }
        t.insert_str(TypeMultiset::parse_key(key)?, &src.join(" + "))?;
    }
    Ok(t)
}

fn default_table(sig: &Signature) -> Result<CoeffTable> {
    let surface = CoeffTable::surface_default();
    if surface.signature() == sig {
        Ok(surface)
    } else {
        generic_table(sig)
    }
}

fn count(types: &str, geometry: Option<&Path>, table: Option<&Path>, names: Names, json: bool) -> Result<String> {
    let m = TypeMultiset::parse_types(types)?;
    let table = match table {
        Some(p) => load_table(p)?,
        None => CoeffTable::surface_default(),
    };
    let value = match geometry {
        Some(p) => {
            let v = load_chern_vector(p)?;
            exp_series(&table, &v, m.size())?.coeff(&m).to_string()
        }
        None => {
            let p = universal_polynomial(&table, &m)?;
            match names {
                Names::Chern => p.to_string(),
                Names::Surface => to_surface_names(&p)?.to_string(),
            }
        }
    };
    if json {
        return Ok(pretty(json!({"types": m.to_string(), "value": value})));
    }
    Ok(format!("{m}\t{value}\n"))
}

fn severi(d: u32, delta: u32, alpha: &[u32], beta: &[u32], upto: bool, json: bool) -> Result<String> {
    let mut o = SeveriOracle::new();
    if upto {
        let table: Vec<Vec<String>> =
            (1..=d).map(|e| (0..=delta).map(|g| o.severi_degree(e, g).to_string()).collect()).collect();
        if json {
            let rows: Vec<_> = table.iter().enumerate().map(|(i, r)| json!({"d": i + 1, "values": r})).collect();
            return Ok(pretty(json!({"delta_max": delta, "rows": rows})));
        }
        let mut rows = vec![std::iter::once("d".to_string()).chain((0..=delta).map(|g| format!("δ={g}"))).collect()];
        rows.extend(table.into_iter().enumerate().map(|(i, r)| std::iter::once((i + 1).to_string()).chain(r).collect()));
        return Ok(aligned(&rows));
    }
    let state = if alpha.is_empty() && beta.is_empty() {
        CHState::severi(d, delta)
    } else {
        CHState::new(d, delta, alpha.to_vec(), beta.to_vec())
    };
    let v = o.severi(&state)?;
    if json {
        return Ok(pretty(json!({"d": d, "delta": delta, "alpha": state.alpha, "beta": state.beta, "value": v.to_string()})));
    }
    Ok(format!("{v}\n"))
}

fn verify_dpr(path: &Path) -> Result<String> {
    let rel = load_relation(path)?;
    let n: Vec<ChernVector> = rel.geometries.iter().map(|g| g.chern_vector()).collect::<Result<_, _>>()?;
    let sig = n[0].signature().clone();
    if !dpr_check(&n[0], &n[1], &n[2], &n[3])? {
        let diff = n[1].try_add(&n[2])?.try_sub(&n[3])?.try_sub(&n[0])?;
        let bad: Vec<String> = diff.iter().filter(|(_, x)| **x != Rational::from_integer(0.into())).map(|(m, x)| format!("{m}: {x}")).collect();
        bail!("FAILED (Chern additivity): n1 + n2 - n3 - n0 = {}", bad.join(", "));
    }
    let table = match rel.table {
        Some(t) => t,
        None => default_table(&sig)?,
    };
    if !degeneration_identity_check(&table, [&n[0], &n[1], &n[2], &n[3]], rel.bound)? {
        bail!("FAILED (series identity to bound {})", rel.bound);
    }
    Ok("OK (Chern additivity + series identity)\n".into())
}

/// Runs one command and returns its standard output.
pub fn run(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Basis { sig, json } => basis(&sig.signature()?, *json),
        Command::Chern { geometry, json } => chern(geometry, *json),
        Command::PairingMatrix { sig, json } => pairing(&sig.signature()?, *json),
        Command::Decompose { input, json } => decompose(input, *json),
        Command::Icis { germ, vars, k, table, json } => icis(germ.as_deref(), vars, *k, *table, *json),
        Command::Count { types, geometry, table, names, json } => count(types, geometry.as_deref(), table.as_deref(), *names, *json),
        Command::Severi { d, delta, alpha, beta, upto, json } => severi(*d, *delta, alpha, beta, *upto, *json),
        Command::VerifyDpr { relation } => verify_dpr(relation),
    }
}

/// Parses arguments (including the program name) and runs.
pub fn run_args<I, T>(args: I) -> Result<String>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    run(&cli)
}
