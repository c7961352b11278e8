import { describe, expect, it } from 'vitest';

import { layerOffsets } from '../src/renderer.js';
import type { LoadedStack } from '../src/types.js';
import manifest from './fixtures/two_layer_manifest.json';

const img = {} as unknown as CanvasImageSource;

function stackFromManifest(gain = manifest.gain_px): LoadedStack {
  return {
    width: manifest.width,
    height: manifest.height,
    fixationNearness: manifest.fixation_nearness,
    gainPx: gain,
    layers: manifest.layers.map((l) => ({ image: img, nearness: l.nearness })),
  };
}

describe('layerOffsets', () => {
  it('is all-zero at the idle pose, so drawing equals the flattened stack', () => {
    const offsets = layerOffsets(stackFromManifest(), { hx: 0, hy: 0 });
    for (const o of offsets) {
      expect(o.dx).toBe(0);
      expect(o.dy).toBe(0);
    }
  });

  it('keeps far-to-near draw order (ascending nearness)', () => {
    const offsets = layerOffsets(stackFromManifest(), { hx: 0.5, hy: 0 });
    const near = offsets.map((o) => o.nearness);
    expect(near).toEqual([...near].sort((a, b) => a - b));
  });

  it('matches the frozen primary offsets on the shared fixture poses', () => {
    const stack = stackFromManifest();
    const fg = 1; // index of the nearness-1 layer
    expect(layerOffsets(stack, { hx: 1, hy: 0 })[fg].dx).toBeCloseTo(10, 12);
    expect(layerOffsets(stack, { hx: 0, hy: 1 })[fg].dy).toBeCloseTo(10, 12);
    expect(layerOffsets(stack, { hx: 1, hy: 0 })[0].dx).toBe(0); // fixation plane
  });

  it('scales offsets proportionally between stacks differing only in gain', () => {
    const a = layerOffsets(stackFromManifest(10), { hx: 0.7, hy: -0.2 });
    const b = layerOffsets(stackFromManifest(25), { hx: 0.7, hy: -0.2 });
    for (let i = 0; i < a.length; i++) {
      expect(b[i].dx).toBeCloseTo(2.5 * a[i].dx, 12);
      expect(b[i].dy).toBeCloseTo(2.5 * a[i].dy, 12);
    }
  });
});
