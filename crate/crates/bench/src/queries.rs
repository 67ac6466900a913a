//! Named benchmark queries.

/// A query in the catalogue. `stand_in` marks simple surveillance-style
/// queries kept for variety next to the two gather-upload tasks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NamedQuery {
    pub id: &'static str,
    pub text: &'static str,
    pub stand_in: bool,
}

pub const GATHER_UPLOAD: &str = "[](<>p1 && <>p2 && <>p3) && [](<>p4 || <>p5) \
&& []((p4 || p5) -> X((!p4 && !p5) U (p1 || p2 || p3)))";

pub const ALTERNATING_GATHER_UPLOAD: &str = "[](<>p1 && <>p2 && <>p3) && [](<>p4 || <>p5) \
&& []((p4 || p5) -> X((!p4 && !p5) U (p1 || p2 || p3))) \
&& []((p1 || p2 || p3) -> X((!p1 && !p2 && !p3) U (p4 || p5)))";

pub const CATALOGUE: &[NamedQuery] = &[
    NamedQuery { id: "phi_c", text: GATHER_UPLOAD, stand_in: false },
    NamedQuery { id: "phi_d", text: ALTERNATING_GATHER_UPLOAD, stand_in: false },
    NamedQuery { id: "patrol", text: "[]<>p1 && []<>p2", stand_in: true },
    NamedQuery { id: "patrol_avoid", text: "[](<>p1 && <>p2 && !p3)", stand_in: true },
    NamedQuery { id: "sequenced", text: "[]<>(p1 && X(!p3 U p2))", stand_in: true },
    NamedQuery { id: "any_upload", text: "[]<>p1 && [](<>p4 || <>p5)", stand_in: true },
];

/// Catalogue text for a known id, otherwise the argument itself.
pub fn resolve_query(id_or_text: &str) -> (&str, Option<&'static NamedQuery>) {
    match CATALOGUE.iter().find(|q| q.id == id_or_text) {
        Some(q) => (q.text, Some(q)),
        None => (id_or_text, None),
    }
}
