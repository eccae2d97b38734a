"""In-process HTTP stub for the generation endpoint contract.

Replays canned (prompt -> completion) fixtures so the glm back-end can be
exercised deterministically in tests, demos, and the acceptance suite
without any model runtime.
"""

from __future__ import annotations

import json
import threading
import time
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Mapping, Optional, Union

DEFAULT_TEXT = "1. Keep a holdout set: evaluate on unseen data."


class _SilentServer(ThreadingHTTPServer):
    daemon_threads = True

    def handle_error(self, request, client_address):
        # A client that times out on purpose hangs up mid-response; the
        # resulting broken pipe is expected, not a server failure.
        pass


def load_fixtures(directory: Union[str, Path]) -> dict[str, str]:
    """Read every *.json fixture in a directory into a prompt -> completion map.

    A fixture names its prompt either directly ("prompt") or as the user
    query it was recorded for ("query"), in which case the prompt is
    rebuilt from the instruction template.
    """
    from .glm import build_prompt

    fixtures: dict[str, str] = {}
    for path in sorted(Path(directory).glob("*.json")):
        obj = json.loads(path.read_text(encoding="utf-8"))
        prompt = obj["prompt"] if "prompt" in obj else build_prompt(obj["query"])
        fixtures[prompt] = obj["completion"]
    return fixtures


class StubGenerationServer:
    """Threaded HTTP server answering POST {"prompt"} with {"text"}.

    Known prompts return their fixture completion, everything else the
    default text. `status_code` and `delay_s` exist to provoke protocol and
    timeout failures in tests.
    """

    def __init__(
        self,
        fixtures: Optional[Mapping[str, str]] = None,
        default_text: str = DEFAULT_TEXT,
        status_code: int = 200,
        delay_s: float = 0.0,
    ):
        self.fixtures = dict(fixtures or {})
        self.default_text = default_text
        self.status_code = status_code
        self.delay_s = delay_s
        self._server: Optional[ThreadingHTTPServer] = None
        self._thread: Optional[threading.Thread] = None

    @property
    def url(self) -> str:
        if self._server is None:
            raise RuntimeError("server not started")
        host, port = self._server.server_address[:2]
        return f"http://{host}:{port}/generate"

    def start(self) -> "StubGenerationServer":
        outer = self

        class Handler(BaseHTTPRequestHandler):
            def do_POST(self):
                if outer.delay_s:
                    time.sleep(outer.delay_s)
                length = int(self.headers.get("Content-Length", 0))
                try:
                    body = json.loads(self.rfile.read(length))
                    prompt = body.get("prompt", "")
                except (ValueError, AttributeError):
                    prompt = ""
                text = outer.fixtures.get(prompt, outer.default_text)
                payload = json.dumps({"text": text}).encode("utf-8")
                self.send_response(outer.status_code)
                self.send_header("Content-Type", "application/json")
                self.send_header("Content-Length", str(len(payload)))
                self.end_headers()
                self.wfile.write(payload)

            def log_message(self, fmt, *args):
                pass

        self._server = _SilentServer(("127.0.0.1", 0), Handler)
        self._thread = threading.Thread(target=self._server.serve_forever, daemon=True)
        self._thread.start()
        return self

    def stop(self) -> None:
        if self._server is not None:
            self._server.shutdown()
            self._server.server_close()
            self._server = None
        if self._thread is not None:
            self._thread.join(timeout=5)
            self._thread = None

    def __enter__(self) -> "StubGenerationServer":
        return self.start()

    def __exit__(self, *exc) -> None:
        self.stop()
