use super::{box_image, LogicError, SubsetOf};
use crate::builders::{FiniteRelation, Universe};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Worlds, an accessibility relation and a valuation of atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KripkeFrame {
    worlds: Arc<Universe>,
    access: FiniteRelation,
    valuation: BTreeMap<String, SubsetOf>,
}

/// `{"worlds": [...], "access": [["w1","w2"], ...], "valuation": {"p": [...]}}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameFile {
    pub worlds: Vec<String>,
    pub access: Vec<(String, String)>,
    pub valuation: BTreeMap<String, Vec<String>>,
}

impl KripkeFrame {
    pub fn new(
        worlds: Arc<Universe>,
        access: FiniteRelation,
        valuation: BTreeMap<String, SubsetOf>,
    ) -> Result<Self, LogicError> {
        for u in [access.dom(), access.cod()]
            .into_iter()
            .chain(valuation.values().map(|s| s.universe()))
        {
            if u != &worlds {
                return Err(LogicError::UniverseMismatch(
                    worlds.name.clone(),
                    u.name.clone(),
                ));
            }
        }
        Ok(KripkeFrame {
            worlds,
            access,
            valuation,
        })
    }

    pub fn from_file(file: &FrameFile) -> Result<Self, LogicError> {
        let worlds = Arc::new(Universe::new("W", file.worlds.clone())?);
        let pairs: Vec<(&str, &str)> = file
            .access
            .iter()
            .map(|(a, b)| (a.as_str(), b.as_str()))
            .collect();
        let access = FiniteRelation::from_labels(worlds.clone(), worlds.clone(), &pairs)?;
        let valuation = file
            .valuation
            .iter()
            .map(|(p, ws)| Ok((p.clone(), SubsetOf::from_labels(worlds.clone(), ws)?)))
            .collect::<Result<_, LogicError>>()?;
        KripkeFrame::new(worlds, access, valuation)
    }

    pub fn to_file(&self) -> FrameFile {
        FrameFile {
            worlds: self.worlds.elements.clone(),
            access: self
                .access
                .pairs()
                .map(|(x, y)| {
                    (
                        self.worlds.label(x).to_string(),
                        self.worlds.label(y).to_string(),
                    )
                })
                .collect(),
            valuation: self
                .valuation
                .iter()
                .map(|(p, s)| (p.clone(), s.labels()))
                .collect(),
        }
    }

    pub fn worlds(&self) -> &Arc<Universe> {
        &self.worlds
    }

    pub fn access(&self) -> &FiniteRelation {
        &self.access
    }

    pub fn valuation(&self, atom: &str) -> Option<&SubsetOf> {
        self.valuation.get(atom)
    }
}

/// Propositional modal formulas over named atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ModalFormula {
    True,
    False,
    Atom(String),
    Not(Box<ModalFormula>),
    And(Box<ModalFormula>, Box<ModalFormula>),
    Or(Box<ModalFormula>, Box<ModalFormula>),
    Implies(Box<ModalFormula>, Box<ModalFormula>),
    /// `□φ`
    Necessarily(Box<ModalFormula>),
    /// `◇φ`, read as `¬□¬φ`
    Possibly(Box<ModalFormula>),
}

impl fmt::Display for ModalFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ModalFormula::*;
        match self {
            True => f.write_str("true"),
            False => f.write_str("false"),
            Atom(p) => f.write_str(p),
            Not(a) => write!(f, "!{a}"),
            And(a, b) => write!(f, "({a} & {b})"),
            Or(a, b) => write!(f, "({a} | {b})"),
            Implies(a, b) => write!(f, "({a} -> {b})"),
            Necessarily(a) => write!(f, "box {a}"),
            Possibly(a) => write!(f, "dia {a}"),
        }
    }
}

/// The set of worlds where `phi` holds. `□` is [`box_image`] along the
/// accessibility relation.
pub fn eval_modal(frame: &KripkeFrame, phi: &ModalFormula) -> Result<SubsetOf, LogicError> {
    use ModalFormula::*;
    let w = &frame.worlds;
    Ok(match phi {
        True => SubsetOf::full(w.clone()),
        False => SubsetOf::empty(w.clone()),
        Atom(p) => frame
            .valuation(p)
            .ok_or_else(|| LogicError::UnknownAtom(p.clone()))?
            .clone(),
        Not(a) => eval_modal(frame, a)?.complement(),
        And(a, b) => eval_modal(frame, a)?.intersection(&eval_modal(frame, b)?)?,
        Or(a, b) => eval_modal(frame, a)?.union(&eval_modal(frame, b)?)?,
        Implies(a, b) => eval_modal(frame, a)?
            .complement()
            .union(&eval_modal(frame, b)?)?,
        Necessarily(a) => box_image(&frame.access, &eval_modal(frame, a)?)?,
        Possibly(a) => box_image(&frame.access, &eval_modal(frame, a)?.complement())?.complement(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_modal;

    fn frame() -> KripkeFrame {
        let file: FrameFile = serde_json::from_str(
            r#"{"worlds":["1","2"],"access":[["1","2"],["2","2"]],"valuation":{"p":["2"],"q":[]}}"#,
        )
        .unwrap();
        KripkeFrame::from_file(&file).unwrap()
    }

    fn eval(text: &str) -> Vec<String> {
        eval_modal(&frame(), &parse_modal(text).unwrap())
            .unwrap()
            .labels()
    }

    #[test]
    fn necessity_and_possibility() {
        assert_eq!(eval("box true"), ["1", "2"]);
        assert_eq!(eval("box p"), ["1", "2"]);
        assert_eq!(eval("dia p"), ["1", "2"]);
        assert_eq!(eval("p"), ["2"]);
        assert_eq!(eval("box q"), Vec::<String>::new());
        assert_eq!(eval("!p -> q"), ["2"]);
    }

    #[test]
    fn unknown_atom_is_reported() {
        assert_eq!(
            eval_modal(&frame(), &parse_modal("r").unwrap()),
            Err(LogicError::UnknownAtom("r".into()))
        );
    }

    #[test]
    fn frame_file_round_trips() {
        let f = frame();
        assert_eq!(KripkeFrame::from_file(&f.to_file()).unwrap(), f);
    }

    #[test]
    fn unknown_world_in_valuation() {
        let file = FrameFile {
            worlds: vec!["1".into()],
            access: vec![],
            valuation: [("p".to_string(), vec!["9".to_string()])]
                .into_iter()
                .collect(),
        };
        assert!(matches!(
            KripkeFrame::from_file(&file),
            Err(LogicError::UnknownElement { .. })
        ));
    }
}
