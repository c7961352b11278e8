import type { HeadPose } from './types.js';

export function clamp(value: number, min: number, max: number): number {
  return value < min ? min : value > max ? max : value;
}

export function clampPose(pose: HeadPose): HeadPose {
  return { hx: clamp(pose.hx, -1, 1), hy: clamp(pose.hy, -1, 1) };
}

/**
 * Per-layer parallax displacement in pixels, identical to the batch
 * pipeline's law: linear in head offset and in nearness relative to the
 * fixation plane, scaled by the stack's gain.
 */
export function displacement(
  nearness: number,
  pose: HeadPose,
  gainPx: number,
  fixation: number,
): { dx: number; dy: number } {
  const rel = nearness - fixation;
  return { dx: gainPx * pose.hx * rel, dy: gainPx * pose.hy * rel };
}

/**
 * One exponential smoothing step toward a target pose.
 * factor 0 jumps straight to the target; factor close to 1 moves slowly.
 */
export function smoothPose(current: HeadPose, target: HeadPose, factor: number): HeadPose {
  const f = clamp(factor, 0, 0.999);
  return clampPose({
    hx: f * current.hx + (1 - f) * target.hx,
    hy: f * current.hy + (1 - f) * target.hy,
  });
}

/** Pointer position normalized to [-1, 1]^2 about the viewport center. */
export function poseFromPointer(
  clientX: number,
  clientY: number,
  width: number,
  height: number,
  sensitivity: number,
): HeadPose {
  const cx = width / 2;
  const cy = height / 2;
  const hx = cx > 0 ? ((clientX - cx) / cx) * sensitivity : 0;
  const hy = cy > 0 ? ((clientY - cy) / cy) * sensitivity : 0;
  return clampPose({ hx, hy });
}

/**
 * Device orientation to pose: gamma (left/right tilt) drives hx, beta
 * (front/back tilt, rest position ~45 deg when holding a phone) drives hy.
 * 30 degrees of tilt reaches full deflection at sensitivity 1.
 */
export function poseFromOrientation(
  gamma: number | null,
  beta: number | null,
  sensitivity: number,
): HeadPose {
  const hx = ((gamma ?? 0) / 30) * sensitivity;
  const hy = (((beta ?? 45) - 45) / 30) * sensitivity;
  return clampPose({ hx, hy });
}
