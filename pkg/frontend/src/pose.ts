import { poseFromOrientation, poseFromPointer, smoothPose } from './math.js';
import type { HeadPose, InputMapping } from './types.js';

const ZERO: HeadPose = { hx: 0, hy: 0 };

/**
 * Turns pointer or device-orientation events into a smoothed head pose.
 * Pointer is the default source; orientation is opt-in and silently falls
 * back to pointer when unavailable or denied.
 */
export class PoseController {
  private target: HeadPose = ZERO;
  private current: HeadPose = ZERO;
  private detach: (() => void) | null = null;

  constructor(public mapping: InputMapping) {}

  /** Advance the smoothed pose one animation step and return it. */
  tick(): HeadPose {
    this.current = smoothPose(this.current, this.target, this.mapping.smoothing);
    return this.current;
  }

  get pose(): HeadPose {
    return this.current;
  }

  setTarget(pose: HeadPose): void {
    this.target = pose;
  }

  attach(win: Window = window): void {
    this.detachInput();
    if (this.mapping.source === 'orientation') {
      this.attachOrientation(win);
    } else {
      this.attachPointer(win);
    }
  }

  private attachPointer(win: Window): void {
    const onMove = (ev: PointerEvent | MouseEvent) => {
      this.target = poseFromPointer(
        ev.clientX,
        ev.clientY,
        win.innerWidth,
        win.innerHeight,
        this.mapping.sensitivity,
      );
    };
    const onLeave = () => {
      this.target = ZERO;
    };
    win.addEventListener('pointermove', onMove, { passive: true });
    win.document.addEventListener('mouseleave', onLeave);
    this.detach = () => {
      win.removeEventListener('pointermove', onMove);
      win.document.removeEventListener('mouseleave', onLeave);
    };
  }

  private attachOrientation(win: Window): void {
    const onOrientation = (ev: DeviceOrientationEvent) => {
      this.target = poseFromOrientation(ev.gamma, ev.beta, this.mapping.sensitivity);
    };
    const attachListener = () => {
      win.addEventListener('deviceorientation', onOrientation, { passive: true });
      this.detach = () => win.removeEventListener('deviceorientation', onOrientation);
    };
    // iOS-style permission gate: fall back to pointer when denied
    const ctor = (win as unknown as { DeviceOrientationEvent?: { requestPermission?: () => Promise<string> } })
      .DeviceOrientationEvent;
    if (ctor && typeof ctor.requestPermission === 'function') {
      ctor
        .requestPermission()
        .then((state) => {
          if (state === 'granted') attachListener();
          else this.fallbackToPointer(win);
        })
        .catch(() => this.fallbackToPointer(win));
    } else if ('ondeviceorientation' in win) {
      attachListener();
    } else {
      this.fallbackToPointer(win);
    }
  }

  private fallbackToPointer(win: Window): void {
    this.mapping = { ...this.mapping, source: 'pointer' };
    this.attachPointer(win);
  }

  detachInput(): void {
    if (this.detach) {
      this.detach();
      this.detach = null;
    }
  }
}
