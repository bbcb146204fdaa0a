//! Choosing from a finite menu of RAFs, either by pairwise tournament or by
//! maximizing the diagonal-ray utility, and cross-checking the two.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::preference::PreferenceOracle;
use crate::raf::{AlternativeSet, Raf};
use crate::wold::compute_u;

#[derive(Clone, Debug, PartialEq)]
pub struct MenuItem {
    pub label: String,
    pub raf: Raf,
}

/// A nonempty list of distinctly labeled RAFs over one alternative set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MenuRepr", into = "MenuRepr")]
pub struct Menu {
    alts: AlternativeSet,
    items: Vec<MenuItem>,
}

#[derive(Serialize, Deserialize)]
struct MenuRepr {
    alts: AlternativeSet,
    items: Vec<ItemRepr>,
}

#[derive(Serialize, Deserialize)]
struct ItemRepr {
    label: String,
    values: Vec<f64>,
}

impl TryFrom<MenuRepr> for Menu {
    type Error = Error;

    fn try_from(repr: MenuRepr) -> Result<Self> {
        let items = repr
            .items
            .into_iter()
            .map(|item| Ok((item.label, Raf::new(&repr.alts, item.values)?)))
            .collect::<Result<Vec<_>>>()?;
        Menu::new(&repr.alts, items)
    }
}

impl From<Menu> for MenuRepr {
    fn from(menu: Menu) -> Self {
        MenuRepr {
            alts: menu.alts,
            items: menu
                .items
                .into_iter()
                .map(|item| ItemRepr {
                    label: item.label,
                    values: item.raf.values().to_vec(),
                })
                .collect(),
        }
    }
}

impl Menu {
    pub fn new<S: Into<String>>(alts: &AlternativeSet, items: impl IntoIterator<Item = (S, Raf)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (label, raf) in items {
            let label = label.into();
            alts.ensure_same(raf.alternatives())?;
            if !seen.insert(label.clone()) {
                return Err(Error::DuplicateMenuLabel(label));
            }
            out.push(MenuItem { label, raf });
        }
        if out.is_empty() {
            return Err(Error::EmptyMenu);
        }
        Ok(Self {
            alts: alts.clone(),
            items: out,
        })
    }

    /// Labels items `m1, m2, ...`.
    pub fn unlabeled(alts: &AlternativeSet, rafs: impl IntoIterator<Item = Raf>) -> Result<Self> {
        Self::new(
            alts,
            rafs.into_iter().enumerate().map(|(i, r)| (format!("m{}", i + 1), r)),
        )
    }

    pub fn alternatives(&self) -> &AlternativeSet {
        &self.alts
    }

    pub fn items(&self) -> &[MenuItem] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    fn labels_of(&self, indices: impl IntoIterator<Item = usize>) -> Vec<String> {
        indices.into_iter().map(|i| self.items[i].label.clone()).collect()
    }
}

/// Why a menu has no maximal element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChoiceWitness {
    /// Neither item is weakly preferred to the other (`a = b` means
    /// reflexivity fails).
    Incomparable { a: String, b: String },
    /// Each item is strictly beaten by the next one, and the last by the
    /// first.
    Cycle { labels: Vec<String> },
}

impl fmt::Display for ChoiceWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChoiceWitness::Incomparable { a, b } => write!(f, "{a} and {b} are incomparable"),
            ChoiceWitness::Cycle { labels } => {
                write!(f, "strict preference cycle ")?;
                for l in labels {
                    write!(f, "{l} ≺ ")?;
                }
                write!(f, "{}", labels[0])
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChoiceMethod {
    Tournament,
    Utility,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabeledUtility {
    pub label: String,
    pub u: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChoiceResult {
    pub maximal_labels: Vec<String>,
    pub method: ChoiceMethod,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub utilities: Option<Vec<LabeledUtility>>,
}

/// Items weakly preferred to every item of the menu.
///
/// One pass keeps a running champion, a second pass checks the champion
/// against everything and collects the items tied with it. Only when the
/// champion fails the check is the full comparison matrix built, to find
/// the maximal set or a witness that none exists.
pub fn maximal_set<O: PreferenceOracle + ?Sized>(oracle: &O, menu: &Menu) -> Result<ChoiceResult> {
    oracle.alternatives().ensure_same(menu.alternatives())?;
    let items = menu.items();
    let prefers = |i: usize, j: usize| oracle.query(&items[i].raf, &items[j].raf);

    let mut champion = 0;
    for j in 1..items.len() {
        if !prefers(champion, j) {
            champion = j;
        }
    }
    let mut verified = true;
    let mut tied = Vec::new();
    for j in 0..items.len() {
        if !prefers(champion, j) {
            verified = false;
            break;
        }
        if j == champion || prefers(j, champion) {
            tied.push(j);
        }
    }
    let maximal = if verified {
        tied
    } else {
        let n = items.len();
        let matrix: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| prefers(i, j)).collect()).collect();
        let maximal: Vec<usize> = (0..n).filter(|&i| matrix[i].iter().all(|&w| w)).collect();
        if maximal.is_empty() {
            return Err(Error::NoMaximalElement(choice_witness(menu, &matrix)));
        }
        maximal
    };
    Ok(ChoiceResult {
        maximal_labels: menu.labels_of(maximal),
        method: ChoiceMethod::Tournament,
        utilities: None,
    })
}

fn choice_witness(menu: &Menu, matrix: &[Vec<bool>]) -> ChoiceWitness {
    let n = matrix.len();
    for (i, row) in matrix.iter().enumerate() {
        for j in i..n {
            if !row[j] && !matrix[j][i] {
                let labels = menu.labels_of([i, j]);
                return ChoiceWitness::Incomparable {
                    a: labels[0].clone(),
                    b: labels[1].clone(),
                };
            }
        }
    }
    // Connected, yet nothing is maximal: every item is strictly beaten by
    // some other, so following "beaten by" links must revisit an item.
    let mut path = vec![0];
    loop {
        let cur = *path.last().unwrap();
        let next = (0..n).find(|&j| !matrix[cur][j]).expect("item is not maximal");
        if let Some(start) = path.iter().position(|&p| p == next) {
            return ChoiceWitness::Cycle {
                labels: menu.labels_of(path[start..].iter().copied()),
            };
        }
        path.push(next);
    }
}

/// Items whose utility is within `2 tol` of the menu's best.
pub fn choose_by_utility<O: PreferenceOracle + ?Sized>(oracle: &O, menu: &Menu, tol: f64) -> Result<ChoiceResult> {
    oracle.alternatives().ensure_same(menu.alternatives())?;
    let utilities = menu
        .items()
        .iter()
        .map(|item| {
            Ok(LabeledUtility {
                label: item.label.clone(),
                u: compute_u(oracle, &item.raf, tol)?.u,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let best = utilities.iter().map(|l| l.u).fold(f64::NEG_INFINITY, f64::max);
    let maximal_labels = utilities
        .iter()
        .filter(|l| l.u >= best - 2.0 * tol)
        .map(|l| l.label.clone())
        .collect();
    Ok(ChoiceResult {
        maximal_labels,
        method: ChoiceMethod::Utility,
        utilities: Some(utilities),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossValidation {
    /// The two maximal sets coincide.
    pub agrees: bool,
    /// Every tournament-maximal item lies in the utility band.
    pub contained: bool,
    pub tournament: ChoiceResult,
    pub utility: ChoiceResult,
    /// Tournament-maximal items missing from the utility band.
    pub missing_from_band: Vec<String>,
    /// Items in the utility band that the tournament does not select.
    pub band_artifacts: Vec<String>,
}

pub fn cross_validate_choice<O: PreferenceOracle + ?Sized>(
    oracle: &O,
    menu: &Menu,
    tol: f64,
) -> Result<CrossValidation> {
    let tournament = maximal_set(oracle, menu)?;
    let utility = choose_by_utility(oracle, menu, tol)?;
    let missing_from_band: Vec<String> = tournament
        .maximal_labels
        .iter()
        .filter(|l| !utility.maximal_labels.contains(l))
        .cloned()
        .collect();
    let band_artifacts: Vec<String> = utility
        .maximal_labels
        .iter()
        .filter(|l| !tournament.maximal_labels.contains(l))
        .cloned()
        .collect();
    Ok(CrossValidation {
        agrees: missing_from_band.is_empty() && band_artifacts.is_empty(),
        contained: missing_from_band.is_empty(),
        tournament,
        utility,
        missing_from_band,
        band_artifacts,
    })
}
