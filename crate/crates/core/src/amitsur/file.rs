use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::presentation::{EquivariantPresentation, Twist};
use super::units::UnitModel;
use crate::error::{Error, Result};
use crate::formats::GroupRef;
use crate::intlat::{Int, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorSection {
    pub labels: Vec<String>,
    /// Generator name → permutation of divisor indices.
    pub action: BTreeMap<String, Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitSection {
    pub labels: Vec<String>,
    /// Unit label → divisor label → multiplicity; omitted entries are zero.
    pub divisors: BTreeMap<String, BTreeMap<String, i64>>,
}

/// On-disk form of an equivariant presentation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PresentationFile {
    pub schema: String,
    pub name: String,
    pub group: GroupRef,
    pub divisors: DivisorSection,
    pub units: UnitSection,
    /// Generator name → unit label → image.
    pub twists: BTreeMap<String, BTreeMap<String, Twist>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<UnitModel>,
}

fn position(labels: &[String], l: &str, what: &str) -> Result<usize> {
    labels
        .iter()
        .position(|x| x == l)
        .ok_or_else(|| Error::Parse(format!("unknown {} `{}`", what, l)))
}

impl PresentationFile {
    pub fn build(&self) -> Result<(EquivariantPresentation, Option<UnitModel>)> {
        if self.schema != "presentation" {
            return Err(Error::Parse(format!("unexpected schema {:?}", self.schema)));
        }
        let group = self.group.resolve()?;
        for key in self.divisors.action.keys().chain(self.twists.keys()) {
            if group.generator_index(key).is_none() {
                return Err(Error::Parse(format!("unknown group generator {}", key)));
            }
        }
        let sigma = &self.divisors.labels;
        let units = &self.units.labels;
        let mut divisor_perms = Vec::new();
        let mut twists = Vec::new();
        for (name, _) in group.generators() {
            let p = self
                .divisors
                .action
                .get(name)
                .ok_or_else(|| Error::Parse(format!("missing divisor action of {}", name)))?;
            divisor_perms.push(p.clone());
            let t = self
                .twists
                .get(name)
                .ok_or_else(|| Error::Parse(format!("missing unit action of {}", name)))?;
            for l in t.keys() {
                position(units, l, "unit")?;
            }
            let row = units
                .iter()
                .map(|u| t.get(u).cloned().ok_or_else(|| Error::Parse(format!("missing image of {} under {}", u, name))))
                .collect::<Result<Vec<_>>>()?;
            twists.push(row);
        }
        let mut div = IntMatrix::zeros(sigma.len(), units.len());
        for (u, entries) in &self.units.divisors {
            let k = position(units, u, "unit")?;
            for (d, c) in entries {
                div[(position(sigma, d, "divisor")?, k)] = Int::from(*c);
            }
        }
        let p = EquivariantPresentation {
            name: self.name.clone(),
            group,
            divisor_labels: sigma.clone(),
            divisor_perms,
            unit_labels: units.clone(),
            div_map: div,
            twists,
        };
        p.check_shapes()?;
        Ok((p, self.model.clone()))
    }

    pub fn from_presentation(p: &EquivariantPresentation, group: GroupRef, model: Option<UnitModel>) -> Result<Self> {
        let gens = p.group.generators();
        let mut action = BTreeMap::new();
        let mut twists = BTreeMap::new();
        for (s, (name, _)) in gens.iter().enumerate() {
            action.insert(name.clone(), p.divisor_perms[s].clone());
            twists.insert(name.clone(), p.unit_labels.iter().cloned().zip(p.twists[s].iter().cloned()).collect());
        }
        let mut divisors = BTreeMap::new();
        for (k, u) in p.unit_labels.iter().enumerate() {
            let mut entries = BTreeMap::new();
            for (i, d) in p.divisor_labels.iter().enumerate() {
                let c = &p.div_map[(i, k)];
                if c != &Int::from(0) {
                    let c = c.to_i64().ok_or_else(|| Error::SizeGuard("divisor multiplicity".into()))?;
                    entries.insert(d.clone(), c);
                }
            }
            divisors.insert(u.clone(), entries);
        }
        Ok(PresentationFile {
            schema: "presentation".into(),
            name: p.name.clone(),
            group,
            divisors: DivisorSection { labels: p.divisor_labels.clone(), action },
            units: UnitSection { labels: p.unit_labels.clone(), divisors },
            twists,
            model,
        })
    }
}
