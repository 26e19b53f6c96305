//! JSON configuration files.
//!
//! Every number is stored exactly. A dyadic rational is a pair
//! `[mantissa, exponent]` meaning `mantissa · 2^exponent`; a dyadic interval
//! is a pair `[s, t]` meaning `[s·2^t, (s+1)·2^t)`. Integers that do not fit
//! in 64 bits are written as decimal strings.

use std::fmt;
use std::str::FromStr;

use anyhow::{bail, Context};
use num_bigint::BigInt;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};
use zlab_core::dyadic::{
    BoxAxis, DyadicBox, DyadicInterval, DyadicRational, GeneralBox, Halfspace, Region, TranslatePolytope,
};
use zlab_core::incidence::{Configuration, Provenance};

pub const FORMAT_NAME: &str = "zlab-config";
pub const FORMAT_VERSION: u32 = 1;

/// An integer of any size: a JSON number when it fits in `i64`, a decimal
/// string otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match i64::try_from(&self.0) {
            Ok(v) => s.serialize_i64(v),
            Err(_) => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct IntVisitor;
        impl Visitor<'_> for IntVisitor {
            type Value = Int;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Int, E> {
                Ok(Int(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Int, E> {
                Ok(Int(v.into()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
                BigInt::from_str(v).map(Int).map_err(|_| E::custom(format!("bad integer {v:?}")))
            }
        }
        d.deserialize_any(IntVisitor)
    }
}

/// `[mantissa, exponent]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rational(pub Int, pub i64);

impl From<&DyadicRational> for Rational {
    fn from(x: &DyadicRational) -> Self {
        Rational(Int(x.mantissa().clone()), x.exponent())
    }
}

impl From<&Rational> for DyadicRational {
    fn from(r: &Rational) -> Self {
        DyadicRational::new(r.0 .0.clone(), r.1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxisRecord {
    pub lower: Rational,
    pub upper: Rational,
    pub lower_closed: bool,
    pub upper_closed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfspaceRecord {
    pub normal: Vec<Rational>,
    pub offset: Rational,
    pub strict: bool,
    pub translation: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RegionRecord {
    /// Per axis `[s, t]`.
    Dyadic { multiplicity: u32, axes: Vec<(Int, i64)> },
    Box { multiplicity: u32, axes: Vec<AxisRecord> },
    Polytope { multiplicity: u32, dim: usize, halfspaces: Vec<HalfspaceRecord> },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetaRecord {
    pub generator: String,
    #[serde(default)]
    pub params: Vec<(String, String)>,
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigFile {
    pub format: String,
    pub version: u32,
    pub dim: usize,
    #[serde(default)]
    pub meta: MetaRecord,
    pub points: Vec<Vec<Rational>>,
    pub regions: Vec<RegionRecord>,
}

fn rationals(xs: &[DyadicRational]) -> Vec<Rational> {
    xs.iter().map(Rational::from).collect()
}

fn dyadics(xs: &[Rational]) -> Vec<DyadicRational> {
    xs.iter().map(DyadicRational::from).collect()
}

impl ConfigFile {
    pub fn from_config(cfg: &Configuration) -> Self {
        let regions = cfg
            .regions()
            .iter()
            .zip(cfg.multiplicities())
            .map(|(r, &multiplicity)| match r {
                Region::Dyadic(b) => RegionRecord::Dyadic {
                    multiplicity,
                    axes: b.intervals().iter().map(|i| (Int(i.s().clone()), i.t())).collect(),
                },
                Region::General(b) => RegionRecord::Box {
                    multiplicity,
                    axes: b
                        .axes()
                        .iter()
                        .map(|a| AxisRecord {
                            lower: (&a.lower).into(),
                            upper: (&a.upper).into(),
                            lower_closed: a.lower_closed,
                            upper_closed: a.upper_closed,
                        })
                        .collect(),
                },
                Region::Polytope(p) => RegionRecord::Polytope {
                    multiplicity,
                    dim: p.dim(),
                    halfspaces: p
                        .halfspaces()
                        .iter()
                        .zip(p.translations())
                        .map(|(h, y)| HalfspaceRecord {
                            normal: rationals(&h.normal),
                            offset: (&h.offset).into(),
                            strict: h.strict,
                            translation: rationals(y),
                        })
                        .collect(),
                },
            })
            .collect();
        ConfigFile {
            format: FORMAT_NAME.into(),
            version: FORMAT_VERSION,
            dim: cfg.dim(),
            meta: MetaRecord {
                generator: cfg.meta.generator.clone(),
                params: cfg.meta.params.clone(),
                seed: cfg.meta.seed,
            },
            points: cfg.points().iter().map(|p| rationals(p)).collect(),
            regions,
        }
    }

    pub fn to_config(&self) -> anyhow::Result<Configuration> {
        if self.format != FORMAT_NAME {
            bail!("not a {FORMAT_NAME} file (format = {:?})", self.format);
        }
        if self.version != FORMAT_VERSION {
            bail!("unsupported format version {}", self.version);
        }
        let meta = Provenance {
            generator: self.meta.generator.clone(),
            params: self.meta.params.clone(),
            seed: self.meta.seed,
        };
        let mut cfg = Configuration::new(self.dim)?.with_meta(meta);
        for (i, p) in self.points.iter().enumerate() {
            cfg.push_point(dyadics(p)).with_context(|| format!("point {i}"))?;
        }
        for (i, r) in self.regions.iter().enumerate() {
            let (region, multiplicity): (Region, u32) = match r {
                RegionRecord::Dyadic { multiplicity, axes } => {
                    let intervals = axes.iter().map(|(s, t)| DyadicInterval::new(s.0.clone(), *t)).collect();
                    (DyadicBox::new(intervals).with_context(|| format!("region {i}"))?.into(), *multiplicity)
                }
                RegionRecord::Box { multiplicity, axes } => {
                    let axes = axes
                        .iter()
                        .map(|a| BoxAxis {
                            lower: (&a.lower).into(),
                            upper: (&a.upper).into(),
                            lower_closed: a.lower_closed,
                            upper_closed: a.upper_closed,
                        })
                        .collect();
                    (GeneralBox::new(axes).with_context(|| format!("region {i}"))?.into(), *multiplicity)
                }
                RegionRecord::Polytope { multiplicity, dim, halfspaces } => {
                    let hs = halfspaces
                        .iter()
                        .map(|h| Halfspace { normal: dyadics(&h.normal), offset: (&h.offset).into(), strict: h.strict })
                        .collect();
                    let ys = halfspaces.iter().map(|h| dyadics(&h.translation)).collect();
                    (TranslatePolytope::new(*dim, hs, ys).with_context(|| format!("region {i}"))?.into(), *multiplicity)
                }
            };
            cfg.push_region_with_multiplicity(region, multiplicity).with_context(|| format!("region {i}"))?;
        }
        Ok(cfg)
    }
}

pub fn to_json(cfg: &Configuration) -> String {
    serde_json::to_string(&ConfigFile::from_config(cfg)).expect("configurations always serialize")
}

pub fn from_json(text: &str) -> anyhow::Result<Configuration> {
    let file: ConfigFile = serde_json::from_str(text).context("parsing configuration JSON")?;
    file.to_config()
}

/// SHA-256 of the compact JSON encoding, in hex.
pub fn digest(cfg: &Configuration) -> String {
    hex::encode(Sha256::digest(to_json(cfg).as_bytes()))
}

pub fn read_config(path: &std::path::Path) -> anyhow::Result<Configuration> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    from_json(&text).with_context(|| format!("in {}", path.display()))
}

pub fn write_config(path: &std::path::Path, cfg: &Configuration) -> anyhow::Result<()> {
    std::fs::write(path, to_json(cfg)).with_context(|| format!("writing {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use zlab_core::dyadic::dy;

    #[test]
    fn big_mantissas_become_strings() {
        let x = DyadicRational::new(BigInt::from(1) << 80usize | BigInt::from(1), -90);
        let text = serde_json::to_string(&Rational::from(&x)).unwrap();
        assert!(text.starts_with("[\""));
        let back: Rational = serde_json::from_str(&text).unwrap();
        assert_eq!(DyadicRational::from(&back), x);
    }

    #[test]
    fn every_region_kind_round_trips() {
        let mut cfg = Configuration::new(2).unwrap();
        cfg.push_point(vec![dy("1/4"), dy("-3/8")]).unwrap();
        cfg.push_region_with_multiplicity(
            DyadicBox::new(vec![DyadicInterval::new(-1, -1), DyadicInterval::new(3, 2)]).unwrap(),
            2,
        )
        .unwrap();
        let axis = |a: &str, b: &str| BoxAxis { lower: dy(a), upper: dy(b), lower_closed: true, upper_closed: false };
        cfg.push_region(GeneralBox::new(vec![axis("0", "1"), axis("-1/2", "5")]).unwrap()).unwrap();
        cfg.push_region(
            TranslatePolytope::new(
                2,
                vec![Halfspace { normal: vec![dy("1"), dy("-1")], offset: dy("1/8"), strict: true }],
                vec![vec![dy("3"), dy("0")]],
            )
            .unwrap(),
        )
        .unwrap();
        let text = to_json(&cfg);
        let back = from_json(&text).unwrap();
        assert_eq!(back, cfg);
        assert_eq!(digest(&back), digest(&cfg));
    }

    #[test]
    fn rejects_other_formats() {
        let text = r#"{"format":"other","version":1,"dim":1,"points":[],"regions":[]}"#;
        assert!(from_json(text).is_err());
    }
}
