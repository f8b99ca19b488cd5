//! Template and noun tables per environment family.

pub const NOUN_SLOT: &str = "<noun>";

pub const TALK_TEMPLATES: &[&str] = &[
    "Where is <noun>",
    "Open <noun>",
    "Which is <noun>",
    "How are <noun>",
];

pub const TALK_NOUNS: &[&str] = &[
    "sesame",
    "the exit",
    "the wall",
    "you",
    "the ceiling",
    "the window",
    "the entrance",
    "the closet",
    "the drawer",
    "the fridge",
    "oven",
    "the lamp",
    "the trash can",
    "the chair",
    "the bed",
    "the sofa",
];

pub const DIVERSE_NOUNS: &[&str] = &[
    "sesame",
    "the exit",
    "the correct door",
    "you",
    "the ceiling",
    "the window",
    "the entrance",
    "the closet",
    "the drawer",
    "the fridge",
    "oven",
    "the lamp",
    "the trash can",
    "the chair",
    "the bed",
    "the sofa",
];

pub const COIN_TEMPLATES: &[&str] = &["Here is <noun>"];
pub const COIN_NOUNS: &[&str] = &["1", "2", "3", "4", "5", "6"];

pub const DANCE_TEMPLATES: &[&str] = &["Move your <noun>", "Shake your <noun>"];
pub const DANCE_NOUNS: &[&str] = &["body", "head"];

pub const SOCIAL_TEMPLATES: &[&str] = &[
    "Where is <noun>",
    "Open <noun>",
    "Close <noun>",
    "How are <noun>",
    "Move your <noun>",
    "Shake your <noun>",
    "Here is <noun>",
    "Which is <noun>",
];

// Union of every single-environment noun list. Index 3 is "you": the merged
// list must contain it for the introduction phrase "How are you" to exist.
pub const SOCIAL_NOUNS: &[&str] = &[
    "sesame",
    "the exit",
    "the wall",
    "you",
    "the ceiling",
    "the window",
    "the entrance",
    "the closet",
    "the drawer",
    "the fridge",
    "oven",
    "the lamp",
    "the trash can",
    "the chair",
    "the bed",
    "the sofa",
    "the correct door",
    "1",
    "2",
    "3",
    "4",
    "5",
    "6",
    "body",
    "head",
];
