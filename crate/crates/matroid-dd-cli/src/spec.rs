//! The JSON matroid description format and its realization.
//!
//! A description file names a matroid class in `"type"` plus the class
//! parameters, and may add four optional modifiers applied in a fixed
//! sequence: `delete`, then `contract` (both resolved against the ground
//! set left by the previous step), then `dual`, and finally `order`, a
//! permutation of the resulting ground set that fixes the variable order
//! for every diagram the command builds.
//!
//! ```json
//! { "type": "uniform", "r": 2, "n": 4, "order": ["e3", "e1", "e2", "e4"] }
//! ```
//!
//! Supported types and their parameters:
//!
//! * `free` — `n`
//! * `uniform` — `r`, `n`
//! * `partition` — `blocks`: list of `[capacity, block_size]` pairs
//! * `nested` — `n`, `gale_set`: sorted 1-based indices of a defining basis
//! * `nested_presentation` — `elements`, `sets`: a chain of element lists
//! * `transversal` — `elements`, `sets`: element lists
//! * `laminar` — `elements`, `family`: list of `{ "set": [...], "cap": k }`
//! * `graphic` — `vertices`, `edges`: list of `[u, v]` endpoint pairs
//! * `gf2` — `columns`: element names, `rows`: 0/1 matrix rows
//! * `explicit` — `elements`, `independent`: the independent sets by name
//!
//! An `explicit` description normally passes through the independence-axiom
//! checker and is refused, with a witness, when the family is not a matroid.
//! The one exception is [`LoadedSpec::raw_family`]: building the diagram of
//! an arbitrary family needs no matroid structure, so `build --target
//! independent` renders non-matroid families too (unless modifiers are
//! present, which only make sense for matroids).

use std::fs;
use std::path::Path;

use serde::Deserialize;

use matroid_dd::family::{AxiomCheck, IndependenceAxioms, SetFamily};
use matroid_dd::matroid::MatroidError;
use matroid_dd::{ElementOrder, Matroid};

use crate::error::CliError;

/// One capacity constraint of a laminar description.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapEntry {
    pub set: Vec<String>,
    pub cap: usize,
}

/// The raw deserialized description file; `realize` interprets it.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    #[serde(rename = "type")]
    kind: String,
    n: Option<usize>,
    r: Option<usize>,
    blocks: Option<Vec<(usize, usize)>>,
    gale_set: Option<Vec<usize>>,
    elements: Option<Vec<String>>,
    sets: Option<Vec<Vec<String>>>,
    family: Option<Vec<CapEntry>>,
    vertices: Option<usize>,
    edges: Option<Vec<(usize, usize)>>,
    columns: Option<Vec<String>>,
    rows: Option<Vec<Vec<u8>>>,
    independent: Option<Vec<Vec<String>>>,
    order: Option<Vec<String>>,
    dual: Option<bool>,
    delete: Option<Vec<String>>,
    contract: Option<Vec<String>>,
}

/// A parsed description, ready to realize as a matroid (or raw family).
pub struct LoadedSpec {
    file: SpecFile,
}

/// Reads and parses a description file.
pub fn load(path: &Path) -> Result<LoadedSpec, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("could not read {}: {e}", path.display())))?;
    let file: SpecFile = serde_json::from_str(&text)?;
    Ok(LoadedSpec { file })
}

impl LoadedSpec {
    /// Lists the class-parameter fields present in the file, by name.
    fn present_params(&self) -> Vec<&'static str> {
        let f = &self.file;
        let mut out = Vec::new();
        let mut note = |cond: bool, name: &'static str| {
            if cond {
                out.push(name);
            }
        };
        note(f.n.is_some(), "n");
        note(f.r.is_some(), "r");
        note(f.blocks.is_some(), "blocks");
        note(f.gale_set.is_some(), "gale_set");
        note(f.elements.is_some(), "elements");
        note(f.sets.is_some(), "sets");
        note(f.family.is_some(), "family");
        note(f.vertices.is_some(), "vertices");
        note(f.edges.is_some(), "edges");
        note(f.columns.is_some(), "columns");
        note(f.rows.is_some(), "rows");
        note(f.independent.is_some(), "independent");
        out
    }

    /// Fails unless the present class parameters are exactly `expected`.
    fn check_params(&self, expected: &[&'static str]) -> Result<(), CliError> {
        let present = self.present_params();
        for &want in expected {
            if !present.contains(&want) {
                return Err(CliError::Input(format!(
                    "type \"{}\" requires the field `{want}`",
                    self.file.kind
                )));
            }
        }
        for &got in &present {
            if !expected.contains(&got) {
                return Err(CliError::Input(format!(
                    "type \"{}\" does not take the field `{got}`",
                    self.file.kind
                )));
            }
        }
        Ok(())
    }

    fn has_modifiers(&self) -> bool {
        let f = &self.file;
        f.dual.unwrap_or(false) || f.delete.is_some() || f.contract.is_some()
    }

    /// The base matroid, before modifiers.
    fn base_matroid(&self) -> Result<Matroid, CliError> {
        let f = &self.file;
        let m = match f.kind.as_str() {
            "free" => {
                self.check_params(&["n"])?;
                Matroid::free(f.n.unwrap())
            }
            "uniform" => {
                self.check_params(&["r", "n"])?;
                Matroid::uniform(f.r.unwrap(), f.n.unwrap())?
            }
            "partition" => {
                self.check_params(&["blocks"])?;
                Matroid::partition(f.blocks.as_ref().unwrap())?
            }
            "nested" => {
                self.check_params(&["n", "gale_set"])?;
                Matroid::nested_from_gale(f.n.unwrap(), f.gale_set.as_ref().unwrap())?
            }
            "nested_presentation" => {
                self.check_params(&["elements", "sets"])?;
                Matroid::nested_from_presentation(
                    f.elements.as_ref().unwrap(),
                    f.sets.as_ref().unwrap(),
                )?
            }
            "transversal" => {
                self.check_params(&["elements", "sets"])?;
                Matroid::transversal(f.elements.as_ref().unwrap(), f.sets.as_ref().unwrap())?
            }
            "laminar" => {
                self.check_params(&["elements", "family"])?;
                let constraints: Vec<(Vec<String>, usize)> = f
                    .family
                    .as_ref()
                    .unwrap()
                    .iter()
                    .map(|entry| (entry.set.clone(), entry.cap))
                    .collect();
                Matroid::laminar(f.elements.as_ref().unwrap(), &constraints)?
            }
            "graphic" => {
                self.check_params(&["vertices", "edges"])?;
                Matroid::graphic(f.vertices.unwrap(), f.edges.as_ref().unwrap())?
            }
            "gf2" => {
                self.check_params(&["columns", "rows"])?;
                Matroid::gf2(f.columns.as_ref().unwrap(), f.rows.as_ref().unwrap())?
            }
            "explicit" => {
                self.check_params(&["elements", "independent"])?;
                let (family, ground) = self.explicit_family()?;
                match Matroid::from_independent_family(ground.names(), &family) {
                    Ok(m) => m,
                    Err(MatroidError::NotAMatroid { verdict }) => {
                        return Err(CliError::Input(format_axiom_failure(&ground, &verdict)));
                    }
                    Err(other) => return Err(other.into()),
                }
            }
            other => {
                return Err(CliError::Input(format!(
                    "unknown matroid type \"{other}\" (expected one of free, uniform, \
                     partition, nested, nested_presentation, transversal, laminar, \
                     graphic, gf2, explicit)"
                )));
            }
        };
        Ok(m)
    }

    /// The explicit family exactly as written, masks relative to `elements`.
    fn explicit_family(&self) -> Result<(SetFamily, ElementOrder), CliError> {
        let f = &self.file;
        let ground = ElementOrder::new(f.elements.clone().unwrap())?;
        let members: Vec<u64> = f
            .independent
            .as_ref()
            .unwrap()
            .iter()
            .map(|set| ground.mask_of(set.iter().map(String::as_str)))
            .collect::<Result<_, _>>()?;
        let family = SetFamily::new(ground.len(), members)?;
        Ok((family, ground))
    }

    /// The described matroid with all modifiers applied, and the variable
    /// order to build diagrams under (the `order` field, or the ground order).
    pub fn matroid(&self) -> Result<(Matroid, ElementOrder), CliError> {
        let f = &self.file;
        let mut m = self.base_matroid()?;
        if let Some(names) = &f.delete {
            let mask = m.ground().mask_of(names.iter().map(String::as_str))?;
            m = m.delete(mask)?;
        }
        if let Some(names) = &f.contract {
            let mask = m.ground().mask_of(names.iter().map(String::as_str))?;
            m = m.contract(mask)?;
        }
        if f.dual.unwrap_or(false) {
            m = m.dual();
        }
        let order = match &f.order {
            Some(names) => validated_order(&m, names)?,
            None => m.ground().as_ref().clone(),
        };
        Ok((m, order))
    }

    /// For `explicit` descriptions without modifiers: the family as written,
    /// skipping the matroid axioms, plus the variable order. `None` when the
    /// description is of another type or carries modifiers.
    pub fn raw_family(&self) -> Option<Result<(SetFamily, ElementOrder), CliError>> {
        if self.file.kind != "explicit" || self.has_modifiers() {
            return None;
        }
        Some(self.raw_family_inner())
    }

    fn raw_family_inner(&self) -> Result<(SetFamily, ElementOrder), CliError> {
        self.check_params(&["elements", "independent"])?;
        let (family, ground) = self.explicit_family()?;
        match &self.file.order {
            Some(names) => {
                let order = ElementOrder::new(names.to_vec())?;
                if !same_name_set(&ground, &order) {
                    return Err(order_not_permutation(&ground));
                }
                // re-express the members in the requested order
                let members: Vec<u64> = family
                    .members()
                    .iter()
                    .map(|&mask| ground.remap_mask(mask, &order))
                    .collect::<Result<_, _>>()?;
                let family = SetFamily::new(order.len(), members)?;
                Ok((family, order))
            }
            None => Ok((family, ground)),
        }
    }
}

fn same_name_set(ground: &ElementOrder, order: &ElementOrder) -> bool {
    order.len() == ground.len() && ground.names().iter().all(|n| order.index_of(n).is_some())
}

fn order_not_permutation(ground: &ElementOrder) -> CliError {
    let full = if ground.is_empty() { 0 } else { (1u64 << ground.len()) - 1 };
    CliError::Input(format!(
        "`order` must be a permutation of the ground elements {}",
        ground.format_subset(full)
    ))
}

fn validated_order(m: &Matroid, names: &[String]) -> Result<ElementOrder, CliError> {
    let order = ElementOrder::new(names.to_vec())?;
    if !same_name_set(m.ground(), &order) {
        return Err(order_not_permutation(m.ground()));
    }
    Ok(order)
}

/// Explains which independence axioms failed, naming the offending sets.
fn format_axiom_failure(ground: &ElementOrder, verdict: &IndependenceAxioms) -> String {
    let mut lines = vec!["the family is not a matroid:".to_string()];
    let show = |mask: u64| ground.format_subset(mask);
    if let AxiomCheck::Fail { .. } = &verdict.i1 {
        lines.push("  axiom I1 fails: the empty set is not in the family".to_string());
    }
    if let AxiomCheck::Fail { witness } = &verdict.i2 {
        lines.push(format!(
            "  axiom I2 fails: {} is in the family but its subset {} is not",
            show(witness[0]),
            show(witness[1])
        ));
    }
    if let AxiomCheck::Fail { witness } = &verdict.i3 {
        lines.push(format!(
            "  axiom I3 fails: no element of {} extends the smaller member {}",
            show(witness[1]),
            show(witness[0])
        ));
    }
    lines.join("\n")
}
