// Browser speech interfaces are progressive enhancements: when the engine
// for one of them is missing, the matching control is simply not rendered
// and the app stays a plain text chat.

export interface RecognitionResultEvent {
  results: {
    [index: number]: { [index: number]: { transcript: string }; isFinal: boolean };
    length: number;
  };
  resultIndex: number;
}

export interface Recognition {
  continuous: boolean;
  interimResults: boolean;
  lang: string;
  start(): void;
  stop(): void;
  onresult: ((event: RecognitionResultEvent) => void) | null;
  onerror: ((event: { error: string }) => void) | null;
  onend: (() => void) | null;
}

type RecognitionCtor = new () => Recognition;

function recognitionCtor(win: Window): RecognitionCtor | null {
  const w = win as unknown as Record<string, unknown>;
  return (w.SpeechRecognition ?? w.webkitSpeechRecognition ?? null) as RecognitionCtor | null;
}

export function recognitionAvailable(win: Window): boolean {
  return recognitionCtor(win) !== null;
}

export function createRecognizer(win: Window): Recognition | null {
  const Ctor = recognitionCtor(win);
  if (!Ctor) return null;
  const recognition = new Ctor();
  recognition.continuous = false;
  recognition.interimResults = true;
  recognition.lang = "en-US";
  return recognition;
}

export function synthesisAvailable(win: Window): boolean {
  return "speechSynthesis" in win && !!win.speechSynthesis;
}

/** Queued speech synthesis with an on/off toggle and a male-voice preference. */
export class Speaker {
  enabled = false;

  constructor(private win: Window) {}

  get available(): boolean {
    return synthesisAvailable(this.win);
  }

  private pickVoice(): SpeechSynthesisVoice | null {
    const voices = this.win.speechSynthesis.getVoices() ?? [];
    return voices.find((v) => /male|man|david|daniel/i.test(v.name)) ?? null;
  }

  speak(texts: string[]): void {
    if (!this.enabled || !this.available) return;
    for (const text of texts) {
      const utterance = new SpeechSynthesisUtterance(text);
      const voice = this.pickVoice();
      if (voice) utterance.voice = voice;
      this.win.speechSynthesis.speak(utterance);
    }
  }

  setEnabled(on: boolean): void {
    this.enabled = on;
    if (!on && this.available) {
      this.win.speechSynthesis.cancel(); // drop anything still queued
    }
  }
}
