use super::{ArrowId, CategoryError, FiniteCategory, ObjectId};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

/// On-disk form of a finite category.
///
/// ```json
/// {"objects": ["A"], "arrows": [{"name": "id", "dom": "A", "cod": "A"}],
///  "identities": {"A": "id"}, "compose": [{"after": "id", "then": "id", "is": "id"}]}
/// ```
///
/// `is = after ∘ then`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowDecl>,
    pub identities: BTreeMap<String, String>,
    pub compose: Vec<CompositeDecl>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowDecl {
    pub name: String,
    pub dom: String,
    pub cod: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompositeDecl {
    pub after: String,
    pub then: String,
    pub is: String,
}

impl ArrowDecl {
    pub fn new(name: &str, dom: &str, cod: &str) -> Self {
        ArrowDecl {
            name: name.into(),
            dom: dom.into(),
            cod: cod.into(),
        }
    }
}

impl CompositeDecl {
    pub fn new(after: &str, then: &str, is: &str) -> Self {
        CompositeDecl {
            after: after.into(),
            then: then.into(),
            is: is.into(),
        }
    }
}

impl CategoryFile {
    pub fn to_category(&self) -> Result<FiniteCategory, CategoryError> {
        let malformed = |m: String| CategoryError::MalformedTable(m);
        let obj_ix: HashMap<&str, usize> = self
            .objects
            .iter()
            .enumerate()
            .map(|(i, o)| (o.as_str(), i))
            .collect();
        let arr_ix: HashMap<&str, usize> = self
            .arrows
            .iter()
            .enumerate()
            .map(|(i, a)| (a.name.as_str(), i))
            .collect();

        let lookup_obj = |field: &str, name: &str| {
            obj_ix
                .get(name)
                .copied()
                .ok_or_else(|| malformed(format!("{field}: unknown object `{name}`")))
        };
        let lookup_arr = |field: &str, name: &str| {
            arr_ix
                .get(name)
                .copied()
                .ok_or_else(|| malformed(format!("{field}: unknown arrow `{name}`")))
        };

        let mut arrows = Vec::with_capacity(self.arrows.len());
        for a in &self.arrows {
            let dom = lookup_obj("arrows.dom", &a.dom)?;
            let cod = lookup_obj("arrows.cod", &a.cod)?;
            arrows.push((ArrowId(a.name.clone()), dom, cod));
        }

        for key in self.identities.keys() {
            lookup_obj("identities", key)?;
        }
        let identities = self
            .objects
            .iter()
            .map(|o| {
                let a = self
                    .identities
                    .get(o)
                    .ok_or_else(|| malformed(format!("identities: no identity for `{o}`")))?;
                lookup_arr("identities", a)
            })
            .collect::<Result<Vec<_>, _>>()?;

        let mut table = HashMap::with_capacity(self.compose.len());
        for c in &self.compose {
            let after = lookup_arr("compose.after", &c.after)?;
            let then = lookup_arr("compose.then", &c.then)?;
            let is = lookup_arr("compose.is", &c.is)?;
            if arrows[after].1 != arrows[then].2 {
                return Err(malformed(format!(
                    "compose: `{}` ∘ `{}` is not a composable pair",
                    c.after, c.then
                )));
            }
            if table.insert((after, then), is).is_some() {
                return Err(malformed(format!(
                    "compose: duplicate entry for `{}` ∘ `{}`",
                    c.after, c.then
                )));
            }
        }

        FiniteCategory::from_fn(
            self.objects.iter().cloned().map(ObjectId).collect(),
            arrows,
            identities,
            |a, t| table.get(&(a, t)).copied(),
        )
    }

    pub fn from_category(cat: &FiniteCategory) -> Self {
        let name = |a| cat.arrow_name(a).0.clone();
        let mut compose = Vec::new();
        for then in cat.arrows() {
            for after in cat.arrows_from(cat.cod(then)) {
                if let Some(c) = cat.compose(after, then) {
                    compose.push(CompositeDecl {
                        after: name(after),
                        then: name(then),
                        is: name(c),
                    });
                }
            }
        }
        CategoryFile {
            objects: cat
                .objects()
                .map(|o| cat.object_name(o).0.clone())
                .collect(),
            arrows: cat
                .arrows()
                .map(|a| ArrowDecl {
                    name: name(a),
                    dom: cat.object_name(cat.dom(a)).0.clone(),
                    cod: cat.object_name(cat.cod(a)).0.clone(),
                })
                .collect(),
            identities: cat
                .objects()
                .map(|o| (cat.object_name(o).0.clone(), name(cat.identity(o))))
                .collect(),
            compose,
        }
    }
}
