//! Social perception predicates shared by every NPC script.

use crate::grid::{Orientation, Pos, Pose, Primitive};

/// Cells strictly between `a` and `b`, which must share a row or column.
fn between(a: Pos, b: Pos) -> impl Iterator<Item = Pos> {
    let dx = (b.x - a.x).signum();
    let dy = (b.y - a.y).signum();
    let n = a.manhattan(b);
    (1..n.max(1)).map(move |k| Pos::new(a.x + dx * k, a.y + dy * k))
}

/// Whether `a` and `b` share a row or column with nothing in between that
/// `blocks` flags.
pub fn clear_line(a: Pos, b: Pos, blocks: impl Fn(Pos) -> bool) -> bool {
    if a == b || (a.x != b.x && a.y != b.y) {
        return false;
    }
    between(a, b).all(|p| !blocks(p))
}

/// Mutual gaze: both poses on a common line, each heading at the other,
/// and the cells between them clear.
pub fn eye_contact(a: Pose, b: Pose, blocks: impl Fn(Pos) -> bool) -> bool {
    a.faces(b.pos) && b.faces(a.pos) && clear_line(a.pos, b.pos, blocks)
}

/// Heading from `from` toward `to` if they are aligned with a clear line.
pub fn gaze_toward(from: Pos, to: Pos, blocks: impl Fn(Pos) -> bool) -> Option<Orientation> {
    if !clear_line(from, to, blocks) {
        return None;
    }
    Orientation::from_delta((to.x - from.x).signum(), (to.y - from.y).signum())
}

/// Per-NPC view of what the agent did this step.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SocialEvents {
    pub agent_adjacent: bool,
    pub agent_in_front: bool,
    pub eye_contact: bool,
    pub poked_this_step: bool,
    /// The agent's utterance, if this NPC could hear it.
    pub heard_utterance: Option<String>,
}

/// Inputs for [`compute_social_events`] that come from the agent's action.
#[derive(Debug, Clone, Copy)]
pub struct AgentBehaviour<'a> {
    pub pose: Pose,
    pub primitive: Option<Primitive>,
    pub utterance: Option<&'a str>,
}

/// Recomputes the event flags for one NPC after the agent has acted.
///
/// `adjacent_hearing` restricts hearing to the 4-neighbourhood; `gaze_blocks`
/// flags cells that interrupt eye contact.
pub fn compute_social_events(
    npc: Pose,
    agent: AgentBehaviour<'_>,
    adjacent_hearing: bool,
    gaze_blocks: impl Fn(Pos) -> bool,
) -> SocialEvents {
    let agent_adjacent = agent.pose.pos.is_adjacent(npc.pos);
    let poked_this_step =
        agent.primitive == Some(Primitive::Toggle) && agent.pose.front() == npc.pos;
    let heard_utterance = agent
        .utterance
        .filter(|_| agent_adjacent || !adjacent_hearing)
        .map(str::to_string);
    SocialEvents {
        agent_adjacent,
        agent_in_front: npc.front() == agent.pose.pos,
        eye_contact: eye_contact(agent.pose, npc, gaze_blocks),
        poked_this_step,
        heard_utterance,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Orientation::*;

    fn open(_: Pos) -> bool {
        false
    }

    #[test]
    fn mutual_facing() {
        let a = Pose::new(2, 3, East);
        let b = Pose::new(5, 3, West);
        assert!(eye_contact(a, b, open));
        assert!(!eye_contact(a, Pose::new(5, 3, North), open));
        assert!(!eye_contact(a, b, |p| p == Pos::new(3, 3)));
        // the endpoints themselves never block
        assert!(eye_contact(a, b, |p| p == Pos::new(2, 3) || p == Pos::new(5, 3)));
    }

    #[test]
    fn adjacent_contact_needs_no_gap() {
        assert!(eye_contact(
            Pose::new(1, 1, South),
            Pose::new(1, 2, North),
            |_| true
        ));
    }

    #[test]
    fn adjacency_and_poke() {
        let npc = Pose::new(3, 3, West);
        let agent = AgentBehaviour {
            pose: Pose::new(4, 3, West),
            primitive: Some(Primitive::Toggle),
            utterance: None,
        };
        let ev = compute_social_events(npc, agent, true, open);
        assert!(ev.agent_adjacent && ev.poked_this_step && !ev.agent_in_front);
        let east = AgentBehaviour {
            pose: Pose::new(4, 3, North),
            primitive: None,
            utterance: None,
        };
        assert!(compute_social_events(npc, east, true, open).agent_adjacent);
    }

    #[test]
    fn adjacency_hearing_rule() {
        let npc = Pose::new(3, 3, East);
        let far = AgentBehaviour {
            pose: Pose::new(6, 3, West),
            primitive: None,
            utterance: Some("How are you"),
        };
        assert_eq!(
            compute_social_events(npc, far, true, open).heard_utterance,
            None
        );
        assert_eq!(
            compute_social_events(npc, far, false, open)
                .heard_utterance
                .as_deref(),
            Some("How are you")
        );
        let ev = compute_social_events(npc, far, true, open);
        assert!(ev.eye_contact && !ev.agent_in_front);
    }

    #[test]
    fn gaze_direction() {
        assert_eq!(
            gaze_toward(Pos::new(1, 1), Pos::new(1, 5), open),
            Some(South)
        );
        assert_eq!(gaze_toward(Pos::new(1, 1), Pos::new(2, 5), open), None);
        assert_eq!(
            gaze_toward(Pos::new(1, 1), Pos::new(4, 1), |p| p.x == 2),
            None
        );
    }
}
