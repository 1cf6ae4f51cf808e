// Screen <-> disk coordinate mapping.  The disk is centered in the canvas
// with a fixed pixel margin; disk y points up, screen y points down.

export interface DiskPoint {
  x: number;
  y: number;
}

export class ScreenMap {
  constructor(
    readonly width: number,
    readonly height: number,
    readonly margin = 24,
  ) {}

  get radius(): number {
    return Math.min(this.width, this.height) / 2 - this.margin;
  }

  get cx(): number {
    return this.width / 2;
  }

  get cy(): number {
    return this.height / 2;
  }

  toDisk(sx: number, sy: number): DiskPoint {
    return {
      x: (sx - this.cx) / this.radius,
      y: (this.cy - sy) / this.radius,
    };
  }

  toScreen(x: number, y: number): DiskPoint {
    return {
      x: this.cx + x * this.radius,
      y: this.cy - y * this.radius,
    };
  }

  vecToDisk(dx: number, dy: number): DiskPoint {
    return { x: dx / this.radius, y: -dy / this.radius };
  }

  insideDisk(sx: number, sy: number): boolean {
    const p = this.toDisk(sx, sy);
    return p.x * p.x + p.y * p.y < 1.0;
  }
}
