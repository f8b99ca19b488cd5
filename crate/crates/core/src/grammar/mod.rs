//! Template grammars, action validation and the hearing channel.

mod action;
mod hearing;
pub mod tables;

use serde::Serialize;

pub use action::{Action, ActionError, Phrase, RawAction, Slot};
pub use hearing::{Dialogue, Utterance, EMPTY_INDICATOR};

use crate::env::EnvId;
use crate::grid::Primitive;
use tables::*;

/// Ordered templates (each with one `<noun>` slot) and nouns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grammar {
    pub templates: &'static [&'static str],
    pub nouns: &'static [&'static str],
}

pub const TALK_GRAMMAR: Grammar = Grammar {
    templates: TALK_TEMPLATES,
    nouns: TALK_NOUNS,
};
pub const DIVERSE_GRAMMAR: Grammar = Grammar {
    templates: TALK_TEMPLATES,
    nouns: DIVERSE_NOUNS,
};
pub const COIN_GRAMMAR: Grammar = Grammar {
    templates: COIN_TEMPLATES,
    nouns: COIN_NOUNS,
};
pub const DANCE_GRAMMAR: Grammar = Grammar {
    templates: DANCE_TEMPLATES,
    nouns: DANCE_NOUNS,
};
pub const SOCIAL_GRAMMAR: Grammar = Grammar {
    templates: SOCIAL_TEMPLATES,
    nouns: SOCIAL_NOUNS,
};

impl Grammar {
    pub fn for_env(env: EnvId) -> Grammar {
        match env {
            EnvId::TalkItOut | EnvId::TalkItOutNoLiar => TALK_GRAMMAR,
            EnvId::DiverseExit => DIVERSE_GRAMMAR,
            EnvId::CoinThief | EnvId::CoinThiefTagged => COIN_GRAMMAR,
            EnvId::Dance | EnvId::ShowMe | EnvId::Help => DANCE_GRAMMAR,
            EnvId::SocialEnv => SOCIAL_GRAMMAR,
        }
    }

    pub fn n_templates(&self) -> usize {
        self.templates.len()
    }

    pub fn n_nouns(&self) -> usize {
        self.nouns.len()
    }

    pub fn render(&self, phrase: Phrase) -> Result<String, ActionError> {
        let template =
            self.templates
                .get(phrase.template as usize)
                .ok_or(ActionError::OutOfRange {
                    slot: Slot::Template,
                    index: phrase.template as i64,
                    limit: self.templates.len(),
                })?;
        let noun = self
            .nouns
            .get(phrase.noun as usize)
            .ok_or(ActionError::OutOfRange {
                slot: Slot::Noun,
                index: phrase.noun as i64,
                limit: self.nouns.len(),
            })?;
        Ok(template.replacen(NOUN_SLOT, noun, 1))
    }

    /// Inverse of [`Grammar::render`]; `None` for strings the grammar cannot produce.
    pub fn parse(&self, text: &str) -> Option<Phrase> {
        self.templates.iter().enumerate().find_map(|(ti, t)| {
            let (prefix, suffix) = t.split_once(NOUN_SLOT)?;
            let noun = text.strip_prefix(prefix)?.strip_suffix(suffix)?;
            let ni = self.nouns.iter().position(|n| *n == noun)?;
            Some(Phrase::new(ti as u8, ni as u8))
        })
    }

    /// Checks a wire action against this grammar and a primitive subset.
    pub fn validate(
        &self,
        raw: RawAction,
        env: EnvId,
        allowed: &[Primitive],
    ) -> Result<Action, ActionError> {
        let [prim, template, noun] = raw.0;
        let primitive = match prim {
            None => None,
            Some(i) => {
                let idx = u8::try_from(i).map_err(|_| ActionError::OutOfRange {
                    slot: Slot::Primitive,
                    index: i,
                    limit: 8,
                })?;
                let p = Primitive::from_index(idx).map_err(|_| ActionError::OutOfRange {
                    slot: Slot::Primitive,
                    index: i,
                    limit: 8,
                })?;
                if let Some(p) = p {
                    if !allowed.contains(&p) {
                        return Err(ActionError::Rejected {
                            env,
                            primitive: p,
                            allowed: allowed.iter().map(|a| a.name()).collect(),
                        });
                    }
                }
                p
            }
        };
        let utterance = match (template, noun) {
            (None, None) => None,
            (Some(_), None) | (None, Some(_)) => return Err(ActionError::Malformed),
            (Some(t), Some(n)) => {
                let check = |slot, v: i64, limit: usize| {
                    if v < 0 || v as usize >= limit {
                        Err(ActionError::OutOfRange {
                            slot,
                            index: v,
                            limit,
                        })
                    } else {
                        Ok(v as u8)
                    }
                };
                let t = check(Slot::Template, t, self.n_templates())?;
                let n = check(Slot::Noun, n, self.n_nouns())?;
                Some(Phrase::new(t, n))
            }
        };
        Ok(Action {
            primitive,
            utterance,
        })
    }
}

/// Machine-readable grammar description published to clients.
#[derive(Debug, Clone, Serialize)]
pub struct GrammarDoc {
    pub env: &'static str,
    pub templates: Vec<&'static str>,
    pub nouns: Vec<&'static str>,
    pub primitives: Vec<PrimitiveDoc>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PrimitiveDoc {
    pub index: u8,
    pub name: &'static str,
}

impl GrammarDoc {
    pub fn for_env(env: EnvId) -> GrammarDoc {
        let g = Grammar::for_env(env);
        GrammarDoc {
            env: env.name(),
            templates: g.templates.to_vec(),
            nouns: g.nouns.to_vec(),
            primitives: std::iter::once(PrimitiveDoc {
                index: 0,
                name: "none",
            })
            .chain(env.allowed_primitives().iter().map(|p| PrimitiveDoc {
                index: p.index(),
                name: p.name(),
            }))
            .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cardinalities() {
        let dims = |e| {
            let g = Grammar::for_env(e);
            (g.n_templates(), g.n_nouns())
        };
        assert_eq!(dims(EnvId::TalkItOut), (4, 16));
        assert_eq!(dims(EnvId::DiverseExit), (4, 16));
        assert_eq!(dims(EnvId::CoinThief), (1, 6));
        assert_eq!(dims(EnvId::Dance), (2, 2));
        assert_eq!(dims(EnvId::ShowMe), (2, 2));
        assert_eq!(dims(EnvId::Help), (2, 2));
        assert_eq!(dims(EnvId::SocialEnv), (8, 25));
    }

    #[test]
    fn rendering_examples() {
        assert_eq!(
            TALK_GRAMMAR.render(Phrase::new(1, 5)).unwrap(),
            "Open the window"
        );
        assert_eq!(
            TALK_GRAMMAR.render(Phrase::new(3, 3)).unwrap(),
            "How are you"
        );
        assert_eq!(COIN_GRAMMAR.render(Phrase::new(0, 2)).unwrap(), "Here is 3");
        assert!(matches!(
            COIN_GRAMMAR.render(Phrase::new(0, 6)),
            Err(ActionError::OutOfRange {
                slot: Slot::Noun,
                ..
            })
        ));
    }

    #[test]
    fn social_union_contains_every_phrase() {
        for env in EnvId::ALL {
            let g = Grammar::for_env(env);
            for t in 0..g.n_templates() as u8 {
                for n in 0..g.n_nouns() as u8 {
                    let text = g.render(Phrase::new(t, n)).unwrap();
                    assert!(
                        SOCIAL_GRAMMAR.parse(&text).is_some(),
                        "{text} missing from union"
                    );
                }
            }
        }
    }

    #[test]
    fn parse_rejects_foreign_strings() {
        assert_eq!(TALK_GRAMMAR.parse("Open sesame"), Some(Phrase::new(1, 0)));
        assert_eq!(TALK_GRAMMAR.parse("Open sesame!"), None);
        assert_eq!(TALK_GRAMMAR.parse("Here is 3"), None);
        assert_eq!(TALK_GRAMMAR.parse(""), None);
    }

    #[test]
    fn validation_examples() {
        let all = Primitive::ALL;
        let ok = TALK_GRAMMAR
            .validate(RawAction([Some(1), None, None]), EnvId::TalkItOut, &all)
            .unwrap();
        assert_eq!(
            ok,
            Action {
                primitive: Some(Primitive::TurnLeft),
                utterance: None
            }
        );
        let noop = TALK_GRAMMAR
            .validate(RawAction([None, None, None]), EnvId::TalkItOut, &all)
            .unwrap();
        assert_eq!(noop, Action::NOOP);
        assert_eq!(
            TALK_GRAMMAR.validate(RawAction([Some(2), Some(1), None]), EnvId::TalkItOut, &all),
            Err(ActionError::Malformed)
        );
        assert!(matches!(
            TALK_GRAMMAR.validate(RawAction([Some(9), None, None]), EnvId::TalkItOut, &all),
            Err(ActionError::OutOfRange {
                slot: Slot::Primitive,
                ..
            })
        ));
        assert!(matches!(
            DANCE_GRAMMAR.validate(
                RawAction([Some(6), None, None]),
                EnvId::Dance,
                &Primitive::MOVEMENT
            ),
            Err(ActionError::Rejected {
                primitive: Primitive::Toggle,
                ..
            })
        ));
    }
}
