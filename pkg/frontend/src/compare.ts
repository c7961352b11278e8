import { StackRenderer } from './renderer.js';
import type { LoadedStack } from './types.js';

export class CompareError extends Error {}

/**
 * Split view: two stacks of equal dimensions under one shared pose, with a
 * draggable vertical seam. The right stack is clipped to the seam, so at
 * 0% / 100% the view degenerates to one full stack.
 */
export class CompareView {
  readonly left: StackRenderer;
  readonly right: StackRenderer;
  private fraction = 0.5;
  private readonly handle: HTMLDivElement;

  constructor(
    container: HTMLElement,
    stackA: LoadedStack,
    stackB: LoadedStack,
  ) {
    if (stackA.width !== stackB.width || stackA.height !== stackB.height) {
      throw new CompareError(
        `stacks differ in size: ${stackA.width}x${stackA.height} vs ${stackB.width}x${stackB.height}`,
      );
    }
    container.classList.add('compare');
    const canvasA = document.createElement('canvas');
    const canvasB = document.createElement('canvas');
    canvasB.classList.add('compare-top');
    this.left = new StackRenderer(canvasA, stackA);
    this.right = new StackRenderer(canvasB, stackB);
    this.handle = document.createElement('div');
    this.handle.className = 'compare-handle';
    container.append(canvasA, canvasB, this.handle);
    this.bindDrag(container);
    this.setSplit(0.5);
  }

  get renderers(): StackRenderer[] {
    return [this.left, this.right];
  }

  setSplit(fraction: number): void {
    this.fraction = Math.min(1, Math.max(0, fraction));
    const pct = this.fraction * 100;
    this.right.canvas.style.clipPath = `inset(0 0 0 ${pct}%)`;
    this.handle.style.left = `${pct}%`;
  }

  get split(): number {
    return this.fraction;
  }

  private bindDrag(container: HTMLElement): void {
    let dragging = false;
    const move = (ev: PointerEvent) => {
      if (!dragging) return;
      const rect = container.getBoundingClientRect();
      if (rect.width > 0) this.setSplit((ev.clientX - rect.left) / rect.width);
    };
    this.handle.addEventListener('pointerdown', (ev) => {
      dragging = true;
      this.handle.setPointerCapture(ev.pointerId);
    });
    this.handle.addEventListener('pointerup', () => {
      dragging = false;
    });
    this.handle.addEventListener('pointermove', move);
  }
}
