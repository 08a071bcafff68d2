//! Two-dimensional decorated-square substitutions: the generalised chair family, its decoration
//! quotients, collared approximants and the factor lattice between the nine spaces.

mod ap;
mod lattice;
mod substitution;
mod tiles;

pub use ap::{ap_complex_2d, face_induced_map, Collar, Space2D};
pub use lattice::{
    chair_space, chair_space_with, chair_system, coarsening_map, compose_path, edge_label, factor_map_edge,
    forces_border, lattice_edges, plan_collars, realizations, ChairSpace, EdgeLabel,
};
pub use substitution::{
    border_forcing_check, legal_adjacencies, legal_patches, supertile_adjacencies, windows, Adjacencies, Collared2D,
    Patch, Substitution2D,
};
pub use tiles::{
    chair_rule, descend_rule, enumerate_prototiles, raw_tiles, ArrowMode, ChairSystem, Coarsening, Decoration,
    DecorationScheme, LabelMode, NE, NW, SE, SW,
};
