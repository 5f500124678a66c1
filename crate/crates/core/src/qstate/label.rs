use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// One of the two protocol participants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Party {
    Alice,
    Bob,
}

impl Party {
    pub fn as_str(self) -> &'static str {
        match self {
            Party::Alice => "alice",
            Party::Bob => "bob",
        }
    }
}

impl fmt::Display for Party {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Party {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "alice" => Ok(Party::Alice),
            "bob" => Ok(Party::Bob),
            _ => Err(Error::InvalidArgument(format!("unknown party `{s}`"))),
        }
    }
}

/// A classical bit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bit {
    Zero,
    One,
}

impl Bit {
    pub const BOTH: [Bit; 2] = [Bit::Zero, Bit::One];

    pub fn from_u8(v: u8) -> Option<Bit> {
        match v {
            0 => Some(Bit::Zero),
            1 => Some(Bit::One),
            _ => None,
        }
    }

    pub fn as_u8(self) -> u8 {
        self as u8
    }

    pub fn flip(self) -> Bit {
        match self {
            Bit::Zero => Bit::One,
            Bit::One => Bit::Zero,
        }
    }
}

impl fmt::Display for Bit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

impl FromStr for Bit {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "0" => Ok(Bit::Zero),
            "1" => Ok(Bit::One),
            _ => Err(Error::InvalidArgument(format!(
                "expected bit 0 or 1, got `{s}`"
            ))),
        }
    }
}

/// Which physical subsystem a qubit belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    /// Alice's private ancilla.
    A,
    A1,
    B1,
    A2,
    B2,
    /// Bob's private ancilla.
    AncillaB,
}

/// Names a single qubit. Ancilla roles may hold several qubits, told apart by
/// `index`; the four protocol qubits always carry index 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    role: Role,
    index: u8,
}

impl Label {
    pub const A1: Label = Label {
        role: Role::A1,
        index: 0,
    };
    pub const B1: Label = Label {
        role: Role::B1,
        index: 0,
    };
    pub const A2: Label = Label {
        role: Role::A2,
        index: 0,
    };
    pub const B2: Label = Label {
        role: Role::B2,
        index: 0,
    };

    /// Qubit `index` of Alice's ancilla system.
    pub const fn alice_ancilla(index: u8) -> Label {
        Label {
            role: Role::A,
            index,
        }
    }

    /// Qubit `index` of Bob's ancilla system.
    pub const fn bob_ancilla(index: u8) -> Label {
        Label {
            role: Role::AncillaB,
            index,
        }
    }

    pub fn role(self) -> Role {
        self.role
    }

    pub fn index(self) -> u8 {
        self.index
    }

    /// The party that keeps this qubit once the initial transfer is done.
    pub fn owner(self) -> Party {
        match self.role {
            Role::A | Role::A1 | Role::A2 => Party::Alice,
            Role::B1 | Role::B2 | Role::AncillaB => Party::Bob,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.role {
            Role::A => write!(f, "A[{}]", self.index),
            Role::AncillaB => write!(f, "AncillaB[{}]", self.index),
            Role::A1 => f.write_str("A1"),
            Role::B1 => f.write_str("B1"),
            Role::A2 => f.write_str("A2"),
            Role::B2 => f.write_str("B2"),
        }
    }
}

impl FromStr for Label {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::InvalidArgument(format!("unknown qubit label `{s}`"));
        match s {
            "A1" => return Ok(Label::A1),
            "B1" => return Ok(Label::B1),
            "A2" => return Ok(Label::A2),
            "B2" => return Ok(Label::B2),
            _ => {}
        }
        let (head, rest) = s.split_once('[').ok_or_else(bad)?;
        let index: u8 = rest
            .strip_suffix(']')
            .ok_or_else(bad)?
            .parse()
            .map_err(|_| bad())?;
        match head {
            "A" => Ok(Label::alice_ancilla(index)),
            "AncillaB" => Ok(Label::bob_ancilla(index)),
            _ => Err(bad()),
        }
    }
}
