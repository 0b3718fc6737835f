pub mod ingest;
pub mod overmodel;
pub mod bowlership;
pub mod config;
pub mod pairing;
pub mod pipeline;
pub mod stats;
pub mod synth;
