//! Drives the session service in-process: two panelists fill in the
//! category tier, then the session is finalized into a session file.
//!
//! `cargo run --example live_session`

use ahp_readiness::datasets::greece_hierarchy;
use ahp_readiness::service::{CreateRequest, FinalizeRequest, JudgmentRequest, ParticipantRequest, SessionManager};
use ahp_readiness::sessions::{ItemRef, JudgmentValue};

fn main() {
    let manager = SessionManager::new(vec![greece_hierarchy()], None);
    let created = manager
        .create_session(&CreateRequest {
            hierarchy: None,
            node: "root".into(),
            method: None,
        })
        .unwrap();
    println!("session {} over {:?}: {} pairs", created.session_id, created.items, created.pairs.len());

    // PL, TI, I, CA
    let panel = [("ana", [1.0 / 2.0, 2.0, 1.0, 1.0 / 2.0, 1.0 / 4.0, 2.0]), ("nikos", [1.0 / 2.0, 1.0, 1.0, 2.0, 2.0, 1.0])];
    for (id, values) in panel {
        manager
            .add_participant(&created.session_id, &ParticipantRequest { id: id.into(), weight: None })
            .unwrap();
        for (pair, v) in created.pairs.iter().zip(values) {
            let r = manager
                .submit_judgment(
                    &created.session_id,
                    &JudgmentRequest {
                        participant: id.into(),
                        row: ItemRef::Index(pair.row),
                        col: ItemRef::Index(pair.col),
                        value: JudgmentValue(v),
                    },
                )
                .unwrap();
            if let Some(ps) = r.participant_state {
                println!("{id} complete: CR {:.3} pass {:?}", ps.cr.unwrap(), ps.passed.unwrap());
            }
            if let Some(g) = r.group {
                println!("group {:.3?}  consensus {:.1}%", g.priorities().weights, g.consensus.s_star * 100.0);
            }
        }
    }

    match manager.finalize(&created.session_id, &FinalizeRequest { force: false }) {
        Ok(_) => unreachable!("ana is inconsistent"),
        Err(e) => println!("refused: {} {}", e.message, e.details),
    }
    let done = manager
        .finalize(&created.session_id, &FinalizeRequest { force: true })
        .unwrap();
    print!("{}", done.session.to_json());
}
