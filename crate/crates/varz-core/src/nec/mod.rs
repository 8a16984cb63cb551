//! Modeling-engine boundary: deck generation for the bowtie and Yagi
//! geometries, output-listing parsing, and an external-process engine client.

pub mod deck;
pub mod engine;
pub mod format;
pub mod listing;
pub mod objective;
pub mod parse;

pub use deck::{gen_bowtie_deck, gen_yagi_deck, new_file_id, BowtieDesign, DeckMeta, FreqSweep, NecDeck, YagiDesign};
pub use engine::{agt_validate, run_engine, EngineConfig, NecRunOutput, AGT_RANGE, ENGINE_ENV};
pub use listing::{render_listing, ListingBlock, PatternRow};
pub use objective::{AntennaModel, NecObjective};
pub use parse::{parse_nec_output, ForwardDirection, NecParse, ParseOptions};
