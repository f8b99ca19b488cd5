//! Plain-text rendering for debugging.

use std::fmt::Write;

use crate::env::WorldState;
use crate::grid::{DoorState, Entity, Pos};
use crate::npc::NpcKind;

fn npc_glyph(kind: NpcKind) -> char {
    match kind {
        NpcKind::Wizard => 'W',
        NpcKind::Guide => 'G',
        NpcKind::Dancer => 'N',
        NpcKind::Thief => 'T',
        NpcKind::Peer => 'P',
        NpcKind::Demonstrator => 'M',
        NpcKind::Helper => 'H',
        NpcKind::Exiter => 'E',
    }
}

fn cell_glyph(e: Option<Entity>) -> char {
    match e {
        None => '.',
        Some(Entity::Wall) => '#',
        Some(Entity::Lava) => '~',
        Some(Entity::Door {
            state: DoorState::Open,
            ..
        }) => 'd',
        Some(Entity::Door { .. }) => 'D',
        Some(Entity::Switch { .. }) => 'S',
        Some(Entity::Coin) => 'c',
    }
}

/// One character per cell, one line per row, then a legend.
pub fn render_ascii(state: &WorldState) -> String {
    let mut out = String::new();
    for y in 0..state.grid.height() {
        for x in 0..state.grid.width() {
            let p = Pos::new(x, y);
            let c = if state.agent.pos == p {
                '@'
            } else if let Some(i) = state.npc_at(p) {
                npc_glyph(state.npcs[i].kind)
            } else {
                cell_glyph(state.grid.get(p))
            };
            out.push(c);
        }
        out.push('\n');
    }
    let _ = writeln!(
        out,
        "legend: @ agent ({}) # wall D door d open door S switch c coin ~ lava . floor",
        state.agent.dir.name()
    );
    let present: Vec<String> = state
        .npcs
        .iter()
        .filter(|n| n.present)
        .map(|n| format!("{} {}", npc_glyph(n.kind), n.name))
        .collect();
    if !present.is_empty() {
        let _ = writeln!(out, "npcs: {}", present.join(", "));
    }
    let _ = writeln!(out, "env: {} t={}/{}", state.active, state.t, state.t_max);
    out
}
