//! JSON structure files and their elaboration into core objects.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use fixedbitset::FixedBitSet;
use rootoid_core::builders::{build_arrangement, build_coxeter, Arrangement, CoxeterMatrix};
use rootoid_core::cat::PrdMorphism;
use rootoid_core::groupoid::{Groupoid, GroupoidBuilder, GroupoidFunctor, Mor, Obj};
use rootoid_core::prd::{PowerSetRep, Protorootoid};
use rootoid_core::setalg::{GroundSet, PartialMap, SetElem, SubringPartition};
use rootoid_core::signed::{l_functor, SignedGroupoidSet};
use serde::{Deserialize, Serialize};

/// A structure file, discriminated by its `kind` field.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum StructureFile {
    Groupoid(GroupoidSpec),
    Protorootoid(ProtorootoidSpec),
    Signed(SignedSpec),
    Coxeter(CoxeterSpec),
    Arrangement(ArrangementSpec),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismEntry {
    pub label: String,
    pub dom: String,
    pub cod: String,
}

/// Objects, morphisms, identities and the composition table `compose[g][h] = gh`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupoidSpec {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismEntry>,
    pub identities: BTreeMap<String, String>,
    pub compose: BTreeMap<String, BTreeMap<String, String>>,
}

/// Ground sets per object, label maps per morphism (identity by label when
/// omitted), optional subring blocks and the cocycle (empty when omitted).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProtorootoidSpec {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismEntry>,
    pub identities: BTreeMap<String, String>,
    pub compose: BTreeMap<String, BTreeMap<String, String>>,
    pub grounds: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub action: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subrings: Option<BTreeMap<String, Vec<Vec<String>>>>,
    #[serde(default)]
    pub cocycle: BTreeMap<String, Vec<String>>,
}

/// Orbits per object, orbit maps per morphism, the orbits whose sign each
/// morphism flips, and optionally the positive roots (`x+` or `x-`) per object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignedSpec {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismEntry>,
    pub identities: BTreeMap<String, String>,
    pub compose: BTreeMap<String, BTreeMap<String, String>>,
    pub orbits: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub action: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default)]
    pub flips: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub positive: Option<BTreeMap<String, Vec<String>>>,
}

/// A Coxeter matrix entry: a positive integer, or `0` / `"inf"` for infinity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixEntry {
    Finite(usize),
    Named(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoxeterSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub matrix: Vec<Vec<MatrixEntry>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementSpec {
    pub dim: usize,
    pub normals: Vec<Vec<i64>>,
}

/// A morphism of protorootoids: the functor on labels and, per source object,
/// the component as a map from target ground labels to source ground labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismFile {
    pub kind: String,
    pub objects: BTreeMap<String, String>,
    pub morphisms: BTreeMap<String, String>,
    pub components: BTreeMap<String, BTreeMap<String, String>>,
}

macro_rules! groupoid_part {
    ($t:ty) => {
        impl $t {
            pub fn groupoid(&self) -> GroupoidSpec {
                GroupoidSpec {
                    objects: self.objects.clone(),
                    morphisms: self.morphisms.clone(),
                    identities: self.identities.clone(),
                    compose: self.compose.clone(),
                }
            }
        }
    };
}

groupoid_part!(ProtorootoidSpec);
groupoid_part!(SignedSpec);

fn parse_body<T: serde::de::DeserializeOwned>(value: serde_json::Value) -> Result<T> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        match path.as_str() {
            "." => anyhow!("{}", e.inner()),
            _ => anyhow!("field `{path}`: {}", e.inner()),
        }
    })
}

/// Parses a structure file. Syntax errors carry a line and column, schema
/// errors the path of the offending field.
pub fn parse_structure(text: &str) -> Result<StructureFile> {
    let mut value: serde_json::Value = serde_json::from_str(text).context("malformed JSON")?;
    let kind = match value.as_object_mut().map(|o| o.remove("kind")) {
        None => bail!("a structure file is a JSON object"),
        Some(None) => bail!("missing field `kind`"),
        Some(Some(serde_json::Value::String(k))) => k,
        Some(Some(_)) => bail!("field `kind` must be a string"),
    };
    Ok(match kind.as_str() {
        "groupoid" => StructureFile::Groupoid(parse_body(value)?),
        "protorootoid" => StructureFile::Protorootoid(parse_body(value)?),
        "signed" => StructureFile::Signed(parse_body(value)?),
        "coxeter" => StructureFile::Coxeter(parse_body(value)?),
        "arrangement" => StructureFile::Arrangement(parse_body(value)?),
        other => bail!(
            "field `kind`: unknown kind `{other}`, expected groupoid, protorootoid, signed, coxeter or arrangement"
        ),
    })
}

pub fn parse_morphism(text: &str) -> Result<MorphismFile> {
    let value: serde_json::Value = serde_json::from_str(text).context("malformed JSON")?;
    let f: MorphismFile = parse_body(value)?;
    if f.kind != "morphism" {
        bail!("morphism file has kind `{}`", f.kind);
    }
    Ok(f)
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

impl MatrixEntry {
    fn value(&self) -> Result<Option<usize>> {
        match self {
            MatrixEntry::Finite(0) => Ok(None),
            MatrixEntry::Finite(k) => Ok(Some(*k)),
            MatrixEntry::Named(s) if matches!(s.as_str(), "inf" | "infinity" | "∞") => Ok(None),
            MatrixEntry::Named(s) => bail!("invalid coxeter matrix entry `{s}`"),
        }
    }
}

impl CoxeterSpec {
    pub fn matrix(&self) -> Result<CoxeterMatrix> {
        let rows = self
            .matrix
            .iter()
            .map(|row| {
                row.iter()
                    .map(MatrixEntry::value)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let labels = match &self.labels {
            Some(l) => l.clone(),
            None => CoxeterMatrix::default_labels(rows.len()),
        };
        Ok(CoxeterMatrix::new(labels, rows)?)
    }
}

impl ArrangementSpec {
    pub fn arrangement(&self) -> Result<Arrangement> {
        Ok(Arrangement::new(self.dim, self.normals.clone())?)
    }
}

fn lookup<T: Copy>(map: &HashMap<&str, T>, label: &str, what: &str) -> Result<T> {
    map.get(label)
        .copied()
        .ok_or_else(|| anyhow!("unknown {what} `{label}`"))
}

impl GroupoidSpec {
    pub fn build(&self) -> Result<Groupoid> {
        let mut b = GroupoidBuilder::new();
        for o in &self.objects {
            b.add_object(o.clone())?;
        }
        for m in &self.morphisms {
            let dom = b
                .object(&m.dom)
                .ok_or_else(|| anyhow!("morphism `{}`: unknown object `{}`", m.label, m.dom))?;
            let cod = b
                .object(&m.cod)
                .ok_or_else(|| anyhow!("morphism `{}`: unknown object `{}`", m.label, m.cod))?;
            b.add_morphism(m.label.clone(), dom, cod)?;
        }
        let mut identities = Vec::with_capacity(self.objects.len());
        for o in &self.objects {
            let label = self
                .identities
                .get(o)
                .ok_or_else(|| anyhow!("`identities`: no identity for object `{o}`"))?;
            identities.push(
                b.morphism(label)
                    .ok_or_else(|| anyhow!("`identities`: unknown morphism `{label}`"))?,
            );
        }
        let mut table: HashMap<(Mor, Mor), Mor> = HashMap::new();
        for (g, row) in &self.compose {
            let gm = b
                .morphism(g)
                .ok_or_else(|| anyhow!("`compose`: unknown morphism `{g}`"))?;
            for (h, gh) in row {
                let hm = b
                    .morphism(h)
                    .ok_or_else(|| anyhow!("`compose`: unknown morphism `{h}`"))?;
                let ghm = b
                    .morphism(gh)
                    .ok_or_else(|| anyhow!("`compose`: unknown morphism `{gh}`"))?;
                table.insert((gm, hm), ghm);
            }
        }
        Ok(b.build(identities, |g, h| table.get(&(g, h)).copied(), true)?)
    }

    pub fn from_groupoid(g: &Groupoid) -> Self {
        let objects = g.objects().map(|a| g.object_label(a).to_string()).collect();
        let morphisms = g
            .morphisms()
            .map(|m| MorphismEntry {
                label: g.label(m).to_string(),
                dom: g.object_label(g.dom(m)).to_string(),
                cod: g.object_label(g.cod(m)).to_string(),
            })
            .collect();
        let identities = g
            .objects()
            .map(|a| {
                (
                    g.object_label(a).to_string(),
                    g.label(g.identity(a)).to_string(),
                )
            })
            .collect();
        let compose = g
            .morphisms()
            .map(|m| {
                let row = g
                    .star(g.dom(m))
                    .iter()
                    .map(|&h| (g.label(h).to_string(), g.label(g.mul(m, h)).to_string()))
                    .collect();
                (g.label(m).to_string(), row)
            })
            .collect();
        GroupoidSpec {
            objects,
            morphisms,
            identities,
            compose,
        }
    }
}

fn object_index(g: &Groupoid) -> HashMap<&str, Obj> {
    g.objects().map(|a| (g.object_label(a), a)).collect()
}

fn morphism_index(g: &Groupoid) -> HashMap<&str, Mor> {
    g.morphisms().map(|m| (g.label(m), m)).collect()
}

/// Label maps `dom ground -> cod ground` as permutations; identity by label when absent.
fn label_perms(
    g: &Groupoid,
    grounds: &[GroundSet],
    action: &BTreeMap<String, BTreeMap<String, String>>,
) -> Result<Vec<Vec<usize>>> {
    let mors = morphism_index(g);
    for key in action.keys() {
        lookup(&mors, key, "morphism in `action`")?;
    }
    g.morphisms()
        .map(|m| {
            let (src, tgt) = (&grounds[g.dom(m).0], &grounds[g.cod(m).0]);
            let label = g.label(m);
            let map = action.get(label);
            src.labels()
                .iter()
                .map(|x| {
                    let y = map.and_then(|row| row.get(x)).unwrap_or(x);
                    tgt.index_of(y).ok_or_else(|| {
                        anyhow!("`action` of `{label}`: `{x}` maps to unknown label `{y}`")
                    })
                })
                .collect()
        })
        .collect()
}

fn grounds_for(
    g: &Groupoid,
    grounds: &BTreeMap<String, Vec<String>>,
    field: &str,
) -> Result<Vec<GroundSet>> {
    let objs = object_index(g);
    for key in grounds.keys() {
        lookup(&objs, key, &format!("object in `{field}`"))?;
    }
    g.objects()
        .map(|a| {
            let label = g.object_label(a);
            let labels = grounds.get(label).cloned().unwrap_or_default();
            GroundSet::new(label, labels).with_context(|| format!("`{field}` of `{label}`"))
        })
        .collect()
}

impl ProtorootoidSpec {
    pub fn build(&self) -> Result<Protorootoid> {
        let g = Arc::new(self.groupoid().build()?);
        let grounds = grounds_for(&g, &self.grounds, "grounds")?;
        let perms = label_perms(&g, &grounds, &self.action)?;
        let subrings = match &self.subrings {
            None => None,
            Some(map) => {
                let objs = object_index(&g);
                for key in map.keys() {
                    lookup(&objs, key, "object in `subrings`")?;
                }
                Some(
                    g.objects()
                        .map(|a| {
                            let ground = &grounds[a.0];
                            let blocks = match map.get(g.object_label(a)) {
                                Some(blocks) => blocks
                                    .iter()
                                    .map(|b| ground.elem_from_labels(b))
                                    .collect::<rootoid_core::Result<Vec<_>>>()?,
                                None => return Ok(SubringPartition::power_set(ground)),
                            };
                            Ok(SubringPartition::new(ground, blocks)?)
                        })
                        .collect::<Result<Vec<_>>>()
                        .context("`subrings`")?,
                )
            }
        };
        let rep = PowerSetRep::new(&g, grounds.clone(), perms, subrings)?;
        let mors = morphism_index(&g);
        for key in self.cocycle.keys() {
            lookup(&mors, key, "morphism in `cocycle`")?;
        }
        let values = g
            .morphisms()
            .map(|m| {
                let labels = self
                    .cocycle
                    .get(g.label(m))
                    .map(Vec::as_slice)
                    .unwrap_or_default();
                grounds[g.cod(m).0]
                    .elem_from_labels(labels)
                    .with_context(|| format!("`cocycle` of `{}`", g.label(m)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Protorootoid::new(g, rep, values)?)
    }

    /// The canonical file: ground labels sorted, maps keyed by label.
    pub fn from_protorootoid(p: &Protorootoid) -> Self {
        let g = p.groupoid();
        let sorted = |e: &SetElem| -> Vec<String> {
            e.sorted_labels().into_iter().map(String::from).collect()
        };
        let grounds = g
            .objects()
            .map(|a| {
                let mut labels = p.ground(a).labels().to_vec();
                labels.sort();
                (g.object_label(a).to_string(), labels)
            })
            .collect();
        let action = g
            .morphisms()
            .map(|m| {
                let (src, tgt) = (p.ground(g.dom(m)), p.ground(g.cod(m)));
                let row = p
                    .rep()
                    .perm(m)
                    .iter()
                    .enumerate()
                    .map(|(i, &j)| (src.label(i).to_string(), tgt.label(j as usize).to_string()))
                    .collect();
                (g.label(m).to_string(), row)
            })
            .collect();
        let subrings = p.rep().has_subrings().then(|| {
            g.objects()
                .map(|a| {
                    let mut blocks: Vec<Vec<String>> =
                        p.ring(a).blocks().iter().map(sorted).collect();
                    blocks.sort();
                    (g.object_label(a).to_string(), blocks)
                })
                .collect()
        });
        let cocycle = g
            .morphisms()
            .map(|m| (g.label(m).to_string(), sorted(p.n(m))))
            .collect();
        let GroupoidSpec {
            objects,
            morphisms,
            identities,
            compose,
        } = GroupoidSpec::from_groupoid(g);
        ProtorootoidSpec {
            objects,
            morphisms,
            identities,
            compose,
            grounds,
            action,
            subrings,
            cocycle,
        }
    }
}

fn bits_from_labels(ground: &GroundSet, labels: &[String], field: &str) -> Result<FixedBitSet> {
    let mut bits = FixedBitSet::with_capacity(ground.len());
    for l in labels {
        let i = ground
            .index_of(l)
            .ok_or_else(|| anyhow!("`{field}` at `{}`: unknown label `{l}`", ground.owner()))?;
        bits.insert(i);
    }
    Ok(bits)
}

impl SignedSpec {
    pub fn build(&self) -> Result<SignedGroupoidSet> {
        let g = Arc::new(self.groupoid().build()?);
        let orbits = grounds_for(&g, &self.orbits, "orbits")?;
        let perms = label_perms(&g, &orbits, &self.action)?;
        let mors = morphism_index(&g);
        for key in self.flips.keys() {
            lookup(&mors, key, "morphism in `flips`")?;
        }
        let flips = g
            .morphisms()
            .map(|m| {
                let labels = self.flips.get(g.label(m)).cloned().unwrap_or_default();
                bits_from_labels(&orbits[g.dom(m).0], &labels, "flips")
            })
            .collect::<Result<Vec<_>>>()?;
        let positive = match &self.positive {
            None => None,
            Some(map) => {
                let objs = object_index(&g);
                for key in map.keys() {
                    lookup(&objs, key, "object in `positive`")?;
                }
                Some(
                    g.objects()
                        .map(|a| {
                            let label = g.object_label(a);
                            let roots = map
                                .get(label)
                                .ok_or_else(|| anyhow!("`positive`: missing object `{label}`"))?;
                            let ground = &orbits[a.0];
                            let mut bits = FixedBitSet::with_capacity(2 * ground.len());
                            for r in roots {
                                let (x, sign) = r.split_at(r.len().saturating_sub(1));
                                let i = ground
                                    .index_of(x)
                                    .filter(|_| sign == "+" || sign == "-")
                                    .ok_or_else(|| {
                                    anyhow!("`positive` at `{label}`: invalid root `{r}`")
                                })?;
                                bits.insert(2 * i + usize::from(sign == "-"));
                            }
                            Ok(bits)
                        })
                        .collect::<Result<Vec<_>>>()?,
                )
            }
        };
        Ok(SignedGroupoidSet::from_orbit_action(
            g, orbits, perms, flips, positive,
        )?)
    }
}

/// Elaborates any structure file into a protorootoid. `budget` caps Coxeter enumeration.
pub fn elaborate(file: &StructureFile, budget: usize) -> Result<Protorootoid> {
    match file {
        StructureFile::Groupoid(spec) => {
            let g = spec.build()?;
            let rep = PowerSetRep::trivial(&g);
            Ok(Protorootoid::zero(Arc::new(g), rep))
        }
        StructureFile::Protorootoid(spec) => spec.build(),
        StructureFile::Signed(spec) => Ok(l_functor(&spec.build()?)?.into_inner()),
        StructureFile::Coxeter(spec) => {
            let sys = build_coxeter(&spec.matrix()?, budget)?;
            Ok((*sys.protorootoid).clone())
        }
        StructureFile::Arrangement(spec) => {
            let r = build_arrangement(&spec.arrangement()?)?;
            Ok((*r.protorootoid).clone())
        }
    }
}

impl MorphismFile {
    pub fn from_morphism(f: &PrdMorphism) -> Self {
        let (sg, tg) = (f.source.groupoid(), f.target.groupoid());
        let objects = sg
            .objects()
            .map(|a| {
                (
                    sg.object_label(a).to_string(),
                    tg.object_label(f.functor.obj(a)).to_string(),
                )
            })
            .collect();
        let morphisms = sg
            .morphisms()
            .map(|m| {
                (
                    sg.label(m).to_string(),
                    tg.label(f.functor.mor(m)).to_string(),
                )
            })
            .collect();
        let components = sg
            .objects()
            .map(|a| {
                let mu = &f.mu[a.0];
                let row = mu
                    .entries()
                    .filter_map(|(y, x)| {
                        x.map(|x| {
                            (
                                mu.source().label(y).to_string(),
                                mu.target().label(x).to_string(),
                            )
                        })
                    })
                    .collect();
                (sg.object_label(a).to_string(), row)
            })
            .collect();
        MorphismFile {
            kind: "morphism".into(),
            objects,
            morphisms,
            components,
        }
    }

    pub fn build(
        &self,
        source: Arc<Protorootoid>,
        target: Arc<Protorootoid>,
    ) -> Result<PrdMorphism> {
        let (sg, tg) = (source.groupoid(), target.groupoid());
        let (s_objs, t_objs) = (object_index(sg), object_index(tg));
        let (s_mors, t_mors) = (morphism_index(sg), morphism_index(tg));
        for key in self.objects.keys().chain(self.components.keys()) {
            lookup(&s_objs, key, "source object")?;
        }
        for key in self.morphisms.keys() {
            lookup(&s_mors, key, "source morphism")?;
        }
        let obj_map = sg
            .objects()
            .map(|a| {
                let label = sg.object_label(a);
                let image = self
                    .objects
                    .get(label)
                    .ok_or_else(|| anyhow!("`objects`: no image for `{label}`"))?;
                lookup(&t_objs, image, "target object")
            })
            .collect::<Result<Vec<_>>>()?;
        let mor_map = sg
            .morphisms()
            .map(|m| {
                let label = sg.label(m);
                let image = self
                    .morphisms
                    .get(label)
                    .ok_or_else(|| anyhow!("`morphisms`: no image for `{label}`"))?;
                lookup(&t_mors, image, "target morphism")
            })
            .collect::<Result<Vec<_>>>()?;
        let functor = GroupoidFunctor { obj_map, mor_map };
        functor.check(sg, tg)?;
        let mu = sg
            .objects()
            .map(|a| {
                let (src_ground, tgt_ground) = (source.ground(a), target.ground(functor.obj(a)));
                let row = self.components.get(sg.object_label(a));
                let pairs: Vec<(&str, &str)> = row
                    .map(|r| r.iter().map(|(y, x)| (y.as_str(), x.as_str())).collect())
                    .unwrap_or_default();
                PartialMap::from_label_pairs(tgt_ground.clone(), src_ground.clone(), pairs)
                    .with_context(|| format!("`components` of `{}`", sg.object_label(a)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PrdMorphism {
            source,
            target,
            functor,
            mu,
        })
    }
}
