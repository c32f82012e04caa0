//! Ford horoballs on the spheres and their tangency structure.

mod ball;
mod figures;
mod graph;
mod tangency;

pub use ball::{
    boundary_ford_gap, caption_formula, caption_identity_holds, caption_radius, ford_radius_boundary, horoball_at, horoball_on_sphere, lemma_horo_radius,
    Horoball,
};
pub use figures::{figure_points, figure_table, FigureEntry};
pub use graph::{
    figure_graph, tangency_graph, tangency_graph_with_summary, GraphFormat, TangencyGraph, FULL_CHECK_HEIGHT,
};
pub use tangency::{
    classify_pairs, form_excess, tangency_form, verify_tangent_or_disjoint, PairSummary, TangencyCertificate, Verdict,
};
