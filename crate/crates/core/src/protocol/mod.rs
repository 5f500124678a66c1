//! The four-step protocol as a message sequence between Alice and Bob.
//!
//! 1. Alice prepares two Bell pairs `(A1,B1)`, `(A2,B2)` and sends B1, B2.
//! 2. Bob announces which pair carries the coin.
//! 3. Both measure their halves of that pair in the computational basis.
//! 4. Alice returns her half of the other pair; Bob projects it, together
//!    with his half, onto the Bell state and aborts if the test fails.

mod message;
mod run;
mod transcript;

pub use message::{Choice, Message, ProtocolOutcome, SentMessage};
pub use run::{run_cheating_alice, run_cheating_bob, run_honest, run_scenario};
pub use transcript::{
    format_probability, Event, MeasurementSummary, Transcript, TRANSCRIPT_HEADER,
};
