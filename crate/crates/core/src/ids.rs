//! Identifier newtypes shared by every module.

use std::fmt;

macro_rules! id_type {
    ($(#[$meta:meta])* $name:ident($inner:ty)) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(pub $inner);

        impl $name {
            #[inline]
            pub fn index(self) -> usize {
                self.0 as usize
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt(f)
            }
        }
    };
}

id_type!(
    /// Dense node index in `[0, node_count)`.
    NodeId(u32)
);
id_type!(
    /// Directed channel index. Edge `e` owns channels `2e` and `2e + 1`.
    ChannelId(u32)
);
id_type!(PrefixId(u32));
id_type!(
    /// Interests get even ids; the data answering interest `2n` is `2n + 1`.
    PacketId(u64)
);

impl ChannelId {
    /// The opposite direction of the same full-duplex link.
    pub fn twin(self) -> ChannelId {
        ChannelId(self.0 ^ 1)
    }

    pub fn edge(self) -> usize {
        (self.0 / 2) as usize
    }
}

impl PacketId {
    pub fn response(self) -> PacketId {
        PacketId(self.0 | 1)
    }

    pub fn is_response(self) -> bool {
        self.0 & 1 == 1
    }

    /// The interest a data packet id answers (identity for interests).
    pub fn request(self) -> PacketId {
        PacketId(self.0 & !1)
    }
}
