//! Minimal quaternion arithmetic (components 1, i, j, k as four reals).

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quat {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quat {
    pub const ZERO: Quat = Quat { w: 0.0, x: 0.0, y: 0.0, z: 0.0 };
    pub const ONE: Quat = Quat { w: 1.0, x: 0.0, y: 0.0, z: 0.0 };
    pub const I: Quat = Quat { w: 0.0, x: 1.0, y: 0.0, z: 0.0 };
    pub const J: Quat = Quat { w: 0.0, x: 0.0, y: 1.0, z: 0.0 };
    pub const K: Quat = Quat { w: 0.0, x: 0.0, y: 0.0, z: 1.0 };

    pub fn mul(self, o: Quat) -> Quat {
        Quat {
            w: self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            x: self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            y: self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            z: self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        }
    }

    pub fn conj(self) -> Quat {
        Quat { w: self.w, x: -self.x, y: -self.y, z: -self.z }
    }

    pub fn scale(self, c: f64) -> Quat {
        Quat { w: c * self.w, x: c * self.x, y: c * self.y, z: c * self.z }
    }

    pub fn add(self, o: Quat) -> Quat {
        Quat { w: self.w + o.w, x: self.x + o.x, y: self.y + o.y, z: self.z + o.z }
    }

    pub fn sub(self, o: Quat) -> Quat {
        Quat { w: self.w - o.w, x: self.x - o.x, y: self.y - o.y, z: self.z - o.z }
    }

    pub fn norm2(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }
}
