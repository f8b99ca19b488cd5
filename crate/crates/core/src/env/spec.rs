use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::grammar::Grammar;
use crate::grid::Primitive;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EnvId {
    TalkItOut,
    Dance,
    CoinThief,
    DiverseExit,
    ShowMe,
    Help,
    SocialEnv,
    TalkItOutNoLiar,
    CoinThiefTagged,
}

impl EnvId {
    pub const ALL: [EnvId; 9] = [
        EnvId::TalkItOut,
        EnvId::Dance,
        EnvId::CoinThief,
        EnvId::DiverseExit,
        EnvId::ShowMe,
        EnvId::Help,
        EnvId::SocialEnv,
        EnvId::TalkItOutNoLiar,
        EnvId::CoinThiefTagged,
    ];

    /// The six environments a SocialEnv episode can be drawn from.
    pub const SOCIAL_MEMBERS: [EnvId; 6] = [
        EnvId::TalkItOut,
        EnvId::Dance,
        EnvId::CoinThief,
        EnvId::DiverseExit,
        EnvId::ShowMe,
        EnvId::Help,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EnvId::TalkItOut => "TalkItOut",
            EnvId::Dance => "Dance",
            EnvId::CoinThief => "CoinThief",
            EnvId::DiverseExit => "DiverseExit",
            EnvId::ShowMe => "ShowMe",
            EnvId::Help => "Help",
            EnvId::SocialEnv => "SocialEnv",
            EnvId::TalkItOutNoLiar => "TalkItOutNoLiar",
            EnvId::CoinThiefTagged => "CoinThiefTagged",
        }
    }

    /// Step budget; `None` for SocialEnv, which inherits it from the drawn member.
    pub fn t_max(self) -> Option<u32> {
        match self {
            EnvId::TalkItOut | EnvId::TalkItOutNoLiar => Some(100),
            EnvId::Dance => Some(20),
            EnvId::CoinThief | EnvId::CoinThiefTagged => Some(20),
            EnvId::DiverseExit => Some(50),
            EnvId::ShowMe => Some(100),
            EnvId::Help => Some(20),
            EnvId::SocialEnv => None,
        }
    }

    pub fn allowed_primitives(self) -> &'static [Primitive] {
        match self {
            EnvId::Dance | EnvId::CoinThief | EnvId::CoinThiefTagged => &Primitive::MOVEMENT,
            _ => &Primitive::ALL,
        }
    }

    pub fn grammar(self) -> Grammar {
        Grammar::for_env(self)
    }

    /// Agents hear this environment's NPCs only from a 4-neighbour cell.
    pub fn agent_hears_adjacent_only(self) -> bool {
        matches!(
            self,
            EnvId::TalkItOut | EnvId::TalkItOutNoLiar | EnvId::DiverseExit
        )
    }

    /// NPCs hear the agent only from a 4-neighbour cell.
    pub fn npc_hears_adjacent_only(self) -> bool {
        matches!(self, EnvId::TalkItOut | EnvId::TalkItOutNoLiar)
    }
}

impl fmt::Display for EnvId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownName(pub String);

impl fmt::Display for UnknownName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown name `{}`", self.0)
    }
}

impl std::error::Error for UnknownName {}

impl FromStr for EnvId {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        EnvId::ALL
            .into_iter()
            .find(|e| e.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownName(s.to_string()))
    }
}

/// Which side of the Help frame the agent plays.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    #[default]
    Exiter,
    Helper,
}

impl Role {
    pub fn name(self) -> &'static str {
        match self {
            Role::Exiter => "exiter",
            Role::Helper => "helper",
        }
    }
}

impl FromStr for Role {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "exiter" => Ok(Role::Exiter),
            "helper" => Ok(Role::Helper),
            _ => Err(UnknownName(s.to_string())),
        }
    }
}

/// Environment selection as requested by a caller.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EnvSpec {
    pub id: EnvId,
    /// Only meaningful for Help.
    pub role: Role,
}

impl EnvSpec {
    pub fn new(id: EnvId) -> Self {
        EnvSpec {
            id,
            role: Role::Exiter,
        }
    }

    pub fn with_role(id: EnvId, role: Role) -> Self {
        EnvSpec { id, role }
    }

    pub fn t_max(&self) -> Option<u32> {
        self.id.t_max()
    }

    pub fn grammar(&self) -> Grammar {
        self.id.grammar()
    }

    pub fn allowed_primitives(&self) -> &'static [Primitive] {
        self.id.allowed_primitives()
    }

    /// Label used in reports and file names, e.g. `Help-helper`.
    pub fn label(&self) -> String {
        match self.id {
            EnvId::Help => format!("Help-{}", self.role.name()),
            id => id.name().to_string(),
        }
    }
}

impl From<EnvId> for EnvSpec {
    fn from(id: EnvId) -> Self {
        EnvSpec::new(id)
    }
}
