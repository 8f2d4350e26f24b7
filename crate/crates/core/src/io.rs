//! Group documents and report records.
//!
//! A group document is a JSON object with `degree`, `generators` (1-based
//! cycle strings such as `"(1 2)(3 4)"` or 1-based image arrays), an optional
//! `name` and an optional `automorphism`: either an array of images aligned
//! with `generators` or an object keyed by 0-based generator position.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::automorphism::Automorphism;
use crate::engel::EngelSink;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Group};
use crate::perm::Perm;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum ElementSpec {
    Cycles(String),
    Images(Vec<usize>),
}

impl ElementSpec {
    pub fn to_perm(&self, degree: usize) -> Result<Perm> {
        match self {
            ElementSpec::Cycles(s) => Perm::parse_cycles(s, degree),
            ElementSpec::Images(images) => {
                if images.len() != degree {
                    return Err(Error::Parse(format!(
                        "image array {:?} has length {}, expected {}",
                        images,
                        images.len(),
                        degree
                    )));
                }
                if images.iter().any(|&i| i == 0 || i > degree) {
                    return Err(Error::Parse(format!("image array {:?} is not 1-based on 1..={}", images, degree)));
                }
                Perm::from_images(images.iter().map(|&i| i - 1).collect())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum AutomorphismSpec {
    Aligned(Vec<ElementSpec>),
    ByPosition(BTreeMap<String, ElementSpec>),
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDocument {
    #[serde(default)]
    pub name: Option<String>,
    pub degree: usize,
    #[serde(default)]
    pub generators: Vec<ElementSpec>,
    #[serde(default)]
    pub automorphism: Option<AutomorphismSpec>,
}

pub fn parse_document(text: &str) -> Result<GroupDocument> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Generators in supplied order and automorphism images aligned with them.
fn resolve(doc: &GroupDocument) -> Result<(Vec<Perm>, Option<Vec<Perm>>)> {
    if doc.degree == 0 {
        return Err(Error::EmptyDomain);
    }
    let gens = doc
        .generators
        .iter()
        .map(|g| g.to_perm(doc.degree))
        .collect::<Result<Vec<_>>>()?;
    let images = match &doc.automorphism {
        None => None,
        Some(AutomorphismSpec::Aligned(list)) => {
            if list.len() != gens.len() {
                return Err(Error::Parse(format!(
                    "automorphism lists {} images for {} generators",
                    list.len(),
                    gens.len()
                )));
            }
            Some(list.iter().map(|e| e.to_perm(doc.degree)).collect::<Result<Vec<_>>>()?)
        }
        Some(AutomorphismSpec::ByPosition(map)) => {
            let mut out: Vec<Option<Perm>> = vec![None; gens.len()];
            for (key, spec) in map {
                let k: usize = key
                    .parse()
                    .ok()
                    .filter(|&k| k < gens.len())
                    .ok_or_else(|| Error::Parse(format!("automorphism key {:?} is not a generator position", key)))?;
                out[k] = Some(spec.to_perm(doc.degree)?);
            }
            let missing: Vec<usize> = (0..gens.len()).filter(|&k| out[k].is_none()).collect();
            if !missing.is_empty() {
                return Err(Error::Parse(format!("automorphism has no image for generators {:?}", missing)));
            }
            Some(out.into_iter().map(Option::unwrap).collect())
        }
    };
    Ok((gens, images))
}

pub struct LoadedGroup {
    pub group: FiniteGroup,
    automorphism: Option<Vec<Perm>>,
}

impl LoadedGroup {
    pub fn has_automorphism(&self) -> bool {
        self.automorphism.is_some()
    }

    pub fn automorphism(&self) -> Option<Automorphism<'_>> {
        let images = self.automorphism.as_ref()?;
        Some(Automorphism::from_images(&self.group, images).expect("validated at load"))
    }

    pub fn automorphism_images(&self) -> Option<&[Perm]> {
        self.automorphism.as_deref()
    }
}

/// Generates the group and validates the automorphism, if any.
pub fn load_group(text: &str) -> Result<LoadedGroup> {
    let doc = parse_document(text)?;
    let (gens, images) = resolve(&doc)?;
    let mut group = FiniteGroup::generate(doc.degree, gens)?;
    if let Some(name) = &doc.name {
        group = group.with_name(name.clone());
    }
    if let Some(images) = &images {
        Automorphism::from_images(&group, images)?;
    }
    Ok(LoadedGroup {
        group,
        automorphism: images,
    })
}

#[derive(Serialize)]
struct CanonicalDocument<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<&'a str>,
    degree: usize,
    generators: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    automorphism: Option<Vec<Vec<usize>>>,
}

fn one_based(p: &Perm) -> Vec<usize> {
    p.images().iter().map(|&i| i as usize + 1).collect()
}

fn canonical_text(name: Option<&str>, degree: usize, gens: &[Perm], images: Option<&[Perm]>) -> String {
    // Sorted, deduplicated generators; the first image seen for a repeated generator wins.
    let mut pairs: Vec<(&Perm, Option<&Perm>)> = gens
        .iter()
        .enumerate()
        .map(|(k, g)| (g, images.map(|im| &im[k])))
        .collect();
    pairs.sort_by(|a, b| a.0.cmp(b.0));
    pairs.dedup_by(|later, earlier| later.0 == earlier.0);
    let doc = CanonicalDocument {
        name: name.filter(|n| !n.is_empty()),
        degree,
        generators: pairs.iter().map(|(g, _)| one_based(g)).collect(),
        automorphism: images.map(|_| pairs.iter().map(|(_, i)| one_based(i.unwrap())).collect()),
    };
    serde_json::to_string(&doc).expect("serializable")
}

/// Canonical text of a document: compact JSON, keys in fixed order,
/// generators as sorted 1-based image arrays.
pub fn canonical_form(text: &str) -> Result<String> {
    let doc = parse_document(text)?;
    let (gens, images) = resolve(&doc)?;
    Ok(canonical_text(doc.name.as_deref(), doc.degree, &gens, images.as_deref()))
}

pub fn serialize_group(group: &FiniteGroup, automorphism: Option<&Automorphism<'_>>) -> String {
    let images: Option<Vec<Perm>> = automorphism.map(|a| a.generator_images().into_iter().cloned().collect());
    canonical_text(Some(group.name()), group.degree(), group.generator_perms(), images.as_deref())
}

pub fn serialize_loaded(loaded: &LoadedGroup) -> String {
    canonical_text(
        Some(loaded.group.name()),
        loaded.group.degree(),
        loaded.group.generator_perms(),
        loaded.automorphism_images(),
    )
}

/// Persisted form of a sink computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SinkReport {
    pub schema: u32,
    pub group: String,
    pub group_order: usize,
    pub owner: String,
    pub side: String,
    pub scope: String,
    pub scope_order: usize,
    pub size: usize,
    pub members: Vec<String>,
    pub census: BTreeMap<usize, usize>,
}

impl SinkReport {
    /// Members are rendered as elements of `group`.
    pub fn new(group: &FiniteGroup, sink: &EngelSink, scope: &str) -> Self {
        SinkReport {
            schema: SCHEMA_VERSION,
            group: group.name().to_string(),
            group_order: group.order(),
            owner: sink.owner.clone(),
            side: sink.side.as_str().to_string(),
            scope: scope.to_string(),
            scope_order: sink.scope_order,
            size: sink.len(),
            members: sink.members.iter().map(|&m| group.label(m)).collect(),
            census: sink.census(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("group      {} (order {})\n", self.group, self.group_order));
        out.push_str(&format!("owner      {}\n", self.owner));
        out.push_str(&format!("side       {}\n", self.side));
        out.push_str(&format!("scope      {} (order {})\n", self.scope, self.scope_order));
        out.push_str(&format!("size       {}\n", self.size));
        let census: Vec<String> = self.census.iter().map(|(l, c)| format!("{}x{}", c, l)).collect();
        out.push_str(&format!("cycles     {}\n", census.join(" ")));
        out.push_str("members\n");
        for m in &self.members {
            out.push_str(&format!("  {}\n", m));
        }
        out
    }
}
