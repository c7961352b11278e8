import { displacement } from './math.js';
import type { HeadPose, LoadedStack } from './types.js';

export interface LayerOffset {
  dx: number;
  dy: number;
  nearness: number;
}

/**
 * Per-layer draw offsets for a pose, far to near. Pure: this is the single
 * place the displacement law is applied, shared by renderer and tests.
 */
export function layerOffsets(stack: LoadedStack, pose: HeadPose): LayerOffset[] {
  return stack.layers.map((layer) => {
    const { dx, dy } = displacement(layer.nearness, pose, stack.gainPx, stack.fixationNearness);
    return { dx, dy, nearness: layer.nearness };
  });
}

/**
 * Canvas compositor: draws the stack back-to-front with whole-layer
 * translations (the compositor's own interpolation handles subpixels).
 */
export class StackRenderer {
  private ctx: CanvasRenderingContext2D;

  constructor(
    public canvas: HTMLCanvasElement,
    public stack: LoadedStack,
  ) {
    canvas.width = stack.width;
    canvas.height = stack.height;
    const ctx = canvas.getContext('2d');
    if (!ctx) throw new Error('2D canvas context unavailable');
    this.ctx = ctx;
  }

  draw(pose: HeadPose): void {
    const { ctx } = this;
    ctx.clearRect(0, 0, this.canvas.width, this.canvas.height);
    // single pass, far to near (layers are stored ascending by nearness)
    const offsets = layerOffsets(this.stack, pose);
    for (let i = 0; i < this.stack.layers.length; i++) {
      ctx.drawImage(this.stack.layers[i].image, offsets[i].dx, offsets[i].dy);
    }
  }
}

/** Drive one or more renderers from a shared pose source at display rate. */
export function startRenderLoop(
  renderers: StackRenderer[],
  nextPose: () => HeadPose,
  win: Window = window,
): () => void {
  let running = true;
  const frame = () => {
    if (!running) return;
    const pose = nextPose();
    for (const r of renderers) r.draw(pose);
    win.requestAnimationFrame(frame);
  };
  win.requestAnimationFrame(frame);
  return () => {
    running = false;
  };
}
