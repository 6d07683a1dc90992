//! TOML file formats. Every file carries `schema = "chernkit.<kind>.v1"`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use chernkit_core::algebra::Rational;
use chernkit_core::chern::{BundleSpec, ChernVector, Geometry, LineBundleExpr, Stage, TowerVariety};
use chernkit_core::icis::SingularityRow;
use chernkit_core::partitions::{ChernMonomial, Signature};
use chernkit_core::series::{CoeffTable, TypeMultiset};

pub const CHERN_VECTOR_SCHEMA: &str = "chernkit.chern-vector.v1";
pub const GEOMETRY_SCHEMA: &str = "chernkit.geometry.v1";
pub const RELATION_SCHEMA: &str = "chernkit.relation.v1";
pub const COEFF_TABLE_SCHEMA: &str = "chernkit.coeff-table.v1";
pub const SINGULARITIES_SCHEMA: &str = "chernkit.singularities.v1";

fn check_schema(found: &str, expected: &str) -> Result<()> {
    if found != expected {
        bail!("schema `{found}` where `{expected}` was expected");
    }
    Ok(())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim().parse::<Rational>().map_err(|e| anyhow!("bad rational `{s}`: {e}"))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Peeks at the `schema` key of a TOML document.
pub fn schema_of(src: &str) -> Result<String> {
    #[derive(Deserialize)]
    struct Head {
        schema: String,
    }
    let head: Head = toml::from_str(src).context("missing or invalid `schema`")?;
    Ok(head.schema)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChernVectorFile {
    pub schema: String,
    pub n: u32,
    pub s: u32,
    pub ranks: Vec<u32>,
    /// Monomial name to rational, e.g. `"c1T^2" = "9"`.
    pub values: BTreeMap<String, String>,
}

impl ChernVectorFile {
    pub fn from_vector(v: &ChernVector) -> Self {
        let sig = v.signature();
        ChernVectorFile {
            schema: CHERN_VECTOR_SCHEMA.into(),
            n: sig.n,
            s: sig.s,
            ranks: sig.ranks.clone(),
            values: v.iter().map(|(m, x)| (m.name(), x.to_string())).collect(),
        }
    }

    pub fn to_vector(&self) -> Result<ChernVector> {
        check_schema(&self.schema, CHERN_VECTOR_SCHEMA)?;
        let sig = Signature::new(self.n, self.s, self.ranks.clone());
        let mut values = BTreeMap::new();
        for (name, x) in &self.values {
            let m = ChernMonomial::parse(name, &sig)?;
            if values.insert(m, parse_rational(x)?).is_some() {
                bail!("monomial `{name}` given twice");
            }
        }
        Ok(ChernVector::new(sig, values)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum StageFile {
    /// `P^dim`.
    Projective(u32),
    /// Projectivization of `⊕ O(Σ c_i g_i)`; one coefficient array per summand.
    Bundle(Vec<Vec<i64>>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometrySpec {
    pub stages: Vec<StageFile>,
    #[serde(default)]
    pub divisors: Vec<Vec<i64>>,
    #[serde(default)]
    pub bundles: Vec<Vec<Vec<i64>>>,
}

impl GeometrySpec {
    pub fn to_geometry(&self) -> Result<Geometry> {
        let stages = self
            .stages
            .iter()
            .map(|s| match s {
                StageFile::Projective(dim) => Stage::Projective { dim: *dim },
                StageFile::Bundle(summands) => {
                    Stage::Bundle { spec: BundleSpec::new(summands.iter().cloned().map(LineBundleExpr).collect()) }
                }
            })
            .collect();
        let tower = TowerVariety::from_stages(stages)?;
        let divisors = self.divisors.iter().cloned().map(LineBundleExpr).collect();
        let bundles =
            self.bundles.iter().map(|b| BundleSpec::new(b.iter().cloned().map(LineBundleExpr).collect())).collect();
        Ok(Geometry::new(tower, divisors, bundles))
    }

    pub fn from_geometry(g: &Geometry) -> Self {
        let coeffs = |l: &LineBundleExpr| l.coeffs().to_vec();
        GeometrySpec {
            stages: g
                .tower
                .stages()
                .iter()
                .map(|s| match s {
                    Stage::Projective { dim } => StageFile::Projective(*dim),
                    Stage::Bundle { spec } => StageFile::Bundle(spec.summands.iter().map(coeffs).collect()),
                })
                .collect(),
            divisors: g.divisors.iter().map(coeffs).collect(),
            bundles: g.bundles.iter().map(|b| b.summands.iter().map(coeffs).collect()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryFile {
    pub schema: String,
    pub stages: Vec<StageFile>,
    #[serde(default)]
    pub divisors: Vec<Vec<i64>>,
    #[serde(default)]
    pub bundles: Vec<Vec<Vec<i64>>>,
}

impl GeometryFile {
    pub fn spec(&self) -> GeometrySpec {
        GeometrySpec { stages: self.stages.clone(), divisors: self.divisors.clone(), bundles: self.bundles.clone() }
    }

    pub fn to_geometry(&self) -> Result<Geometry> {
        check_schema(&self.schema, GEOMETRY_SCHEMA)?;
        self.spec().to_geometry()
    }

    pub fn from_geometry(g: &Geometry) -> Self {
        let s = GeometrySpec::from_geometry(g);
        GeometryFile { schema: GEOMETRY_SCHEMA.into(), stages: s.stages, divisors: s.divisors, bundles: s.bundles }
    }
}

/// A Chern vector read either from a chern-vector file or from a geometry file.
pub fn load_chern_vector(path: &Path) -> Result<ChernVector> {
    let src = read(path)?;
    let schema = schema_of(&src).with_context(|| path.display().to_string())?;
    let v = match schema.as_str() {
        CHERN_VECTOR_SCHEMA => toml::from_str::<ChernVectorFile>(&src)?.to_vector(),
        GEOMETRY_SCHEMA => toml::from_str::<GeometryFile>(&src)?.to_geometry()?.chern_vector().map_err(Into::into),
        other => bail!("{}: schema `{other}` is neither a chern vector nor a geometry", path.display()),
    };
    v.with_context(|| path.display().to_string())
}

pub fn load_geometry(path: &Path) -> Result<Geometry> {
    let src = read(path)?;
    let f: GeometryFile = toml::from_str(&src).with_context(|| path.display().to_string())?;
    f.to_geometry().with_context(|| path.display().to_string())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationFile {
    pub schema: String,
    pub y0: GeometrySpec,
    pub y1: GeometrySpec,
    pub y2: GeometrySpec,
    pub y3: GeometrySpec,
    /// Coefficient table, relative to the relation file.
    #[serde(default)]
    pub table: Option<PathBuf>,
    #[serde(default)]
    pub bound: Option<u32>,
}

pub struct Relation {
    pub geometries: [Geometry; 4],
    pub table: Option<CoeffTable>,
    pub bound: u32,
}

pub const DEFAULT_RELATION_BOUND: u32 = 4;

pub fn load_relation(path: &Path) -> Result<Relation> {
    let src = read(path)?;
    let f: RelationFile = toml::from_str(&src).with_context(|| path.display().to_string())?;
    check_schema(&f.schema, RELATION_SCHEMA)?;
    let geometries = [&f.y0, &f.y1, &f.y2, &f.y3].map(|g| g.to_geometry());
    let [a, b, c, d] = geometries;
    let table = match &f.table {
        Some(t) => {
            let p = path.parent().unwrap_or(Path::new(".")).join(t);
            Some(load_table(&p)?)
        }
        None => None,
    };
    Ok(Relation { geometries: [a?, b?, c?, d?], table, bound: f.bound.unwrap_or(DEFAULT_RELATION_BOUND) })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffTableFile {
    pub schema: String,
    pub n: u32,
    pub s: u32,
    pub ranks: Vec<u32>,
    /// `"(beta | delta)"` to a polynomial in Chern symbols.
    pub entries: BTreeMap<String, String>,
}

impl CoeffTableFile {
    pub fn to_table(&self) -> Result<CoeffTable> {
        check_schema(&self.schema, COEFF_TABLE_SCHEMA)?;
        let mut t = CoeffTable::new(Signature::new(self.n, self.s, self.ranks.clone()));
        for (key, src) in &self.entries {
            let k = TypeMultiset::parse_key(key)?;
            t.insert_str(k, src).with_context(|| format!("entry {key}"))?;
        }
        Ok(t)
    }

    pub fn from_table(t: &CoeffTable) -> Self {
        let sig = t.signature();
        CoeffTableFile {
            schema: COEFF_TABLE_SCHEMA.into(),
            n: sig.n,
            s: sig.s,
            ranks: sig.ranks.clone(),
            entries: t.entries().map(|(k, p)| (k.to_string(), p.to_string())).collect(),
        }
    }
}

pub fn load_table(path: &Path) -> Result<CoeffTable> {
    let src = read(path)?;
    let f: CoeffTableFile = toml::from_str(&src).with_context(|| path.display().to_string())?;
    f.to_table().with_context(|| path.display().to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SingularityEntry {
    pub label: String,
    pub germ: String,
    pub tau: u32,
    pub k: u32,
    #[serde(rename = "N")]
    pub length: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SingularityTableFile {
    pub schema: String,
    pub singularity: Vec<SingularityEntry>,
}

impl SingularityTableFile {
    pub fn from_rows(rows: &[SingularityRow]) -> Self {
        SingularityTableFile {
            schema: SINGULARITIES_SCHEMA.into(),
            singularity: rows
                .iter()
                .map(|r| SingularityEntry {
                    label: r.label.clone(),
                    germ: r.germ.clone(),
                    tau: r.tau,
                    k: r.k,
                    length: r.length_n,
                })
                .collect(),
        }
    }

    pub fn parse(src: &str) -> Result<Self> {
        let f: Self = toml::from_str(src)?;
        check_schema(&f.schema, SINGULARITIES_SCHEMA)?;
        Ok(f)
    }

    pub fn render(&self) -> Result<String> {
        Ok(toml::to_string(self)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use chernkit_core::fixtures::{blowup_point, line_normal_cone};

    #[test]
    fn geometry_round_trip() {
        for g in blowup_point(4).into_iter().chain(line_normal_cone(2)) {
            let src = toml::to_string(&GeometryFile::from_geometry(&g)).unwrap();
            let back: GeometryFile = toml::from_str(&src).unwrap();
            assert_eq!(back.to_geometry().unwrap().chern_vector().unwrap(), g.chern_vector().unwrap());
        }
    }

    #[test]
    fn chern_vector_round_trip() {
        let v = blowup_point(2)[1].chern_vector().unwrap();
        let src = toml::to_string(&ChernVectorFile::from_vector(&v)).unwrap();
        assert_eq!(toml::from_str::<ChernVectorFile>(&src).unwrap().to_vector().unwrap(), v);
    }

    #[test]
    fn wrong_schema_rejected() {
        let src = "schema = \"chernkit.geometry.v2\"\nstages = [{ projective = 1 }]\n";
        assert!(toml::from_str::<GeometryFile>(src).unwrap().to_geometry().is_err());
        assert_eq!(schema_of(src).unwrap(), "chernkit.geometry.v2");
    }
}
