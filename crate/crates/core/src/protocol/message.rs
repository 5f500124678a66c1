use std::fmt;

use crate::error::Error;
use crate::qstate::{Bit, Label, Party};

/// Bob's announcement of which Bell pair carries the coin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Choice {
    First,
    Second,
}

impl Choice {
    pub const BOTH: [Choice; 2] = [Choice::First, Choice::Second];

    /// 1 or 2.
    pub fn number(self) -> u8 {
        match self {
            Choice::First => 1,
            Choice::Second => 2,
        }
    }

    pub fn from_number(n: u8) -> Option<Choice> {
        match n {
            1 => Some(Choice::First),
            2 => Some(Choice::Second),
            _ => None,
        }
    }

    pub fn other(self) -> Choice {
        match self {
            Choice::First => Choice::Second,
            Choice::Second => Choice::First,
        }
    }

    /// `(Alice's half, Bob's half)` of the chosen pair.
    pub fn pair(self) -> (Label, Label) {
        match self {
            Choice::First => (Label::A1, Label::B1),
            Choice::Second => (Label::A2, Label::B2),
        }
    }
}

/// A classical or quantum transmission between the parties.
#[derive(Clone, Debug, PartialEq)]
pub enum Message {
    /// Alice hands over Bob's halves of the prepared pairs.
    StateTransfer(Vec<Label>),
    ChoiceAnnouncement(Choice),
    /// Alice returns one qubit for the Bell test.
    QubitTransfer(Label),
    VerdictPass,
    VerdictAbort,
}

impl Message {
    pub fn kind(&self) -> &'static str {
        match self {
            Message::StateTransfer(_) => "state_transfer",
            Message::ChoiceAnnouncement(_) => "choice",
            Message::QubitTransfer(_) => "qubit_transfer",
            Message::VerdictPass => "verdict_pass",
            Message::VerdictAbort => "verdict_abort",
        }
    }

    /// Position in the four-step message sequence.
    pub fn step(&self) -> u8 {
        match self {
            Message::StateTransfer(_) => 0,
            Message::ChoiceAnnouncement(_) => 1,
            Message::QubitTransfer(_) => 2,
            Message::VerdictPass | Message::VerdictAbort => 3,
        }
    }
}

/// Result of one protocol execution, as seen by the honest party.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProtocolOutcome {
    Heads,
    Tails,
    Abort,
}

impl ProtocolOutcome {
    pub fn from_bit(bit: Bit) -> Self {
        match bit {
            Bit::Zero => ProtocolOutcome::Heads,
            Bit::One => ProtocolOutcome::Tails,
        }
    }

    pub fn bit(self) -> Option<Bit> {
        match self {
            ProtocolOutcome::Heads => Some(Bit::Zero),
            ProtocolOutcome::Tails => Some(Bit::One),
            ProtocolOutcome::Abort => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ProtocolOutcome::Heads => "heads",
            ProtocolOutcome::Tails => "tails",
            ProtocolOutcome::Abort => "abort",
        }
    }
}

impl fmt::Display for ProtocolOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ProtocolOutcome {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "heads" => Ok(ProtocolOutcome::Heads),
            "tails" => Ok(ProtocolOutcome::Tails),
            "abort" => Ok(ProtocolOutcome::Abort),
            _ => Err(Error::InvalidArgument(format!("unknown outcome `{s}`"))),
        }
    }
}

/// A message together with the party that sent it.
#[derive(Clone, Debug, PartialEq)]
pub struct SentMessage {
    pub sender: Party,
    pub message: Message,
}
