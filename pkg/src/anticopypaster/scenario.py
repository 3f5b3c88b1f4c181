"""Deterministic scenario replay.

A scenario declares project roots and a time-ordered list of paste and
edit events plus a final clock value. Replaying drives the per-session
queues with a logical clock: queued events are evaluated at exactly
their due instants, before any same-time scenario event is applied, so
identical scenarios always produce byte-identical logs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .decision import PasteEvent, enqueue_paste, outcome_to_dict, tick
from .errors import EngineError
from .workspace import Workspace


class ScenarioError(EngineError):
    """Scenario file is malformed or references undeclared projects."""


@dataclass(frozen=True)
class ScenarioProject:
    root: str
    config: str | None = None


@dataclass(frozen=True)
class ScenarioEvent:
    kind: str  # "paste" | "edit"
    t: float
    root: str
    file: str
    line: int | None = None
    fragment: str | None = None
    content: str | None = None


@dataclass(frozen=True)
class Scenario:
    projects: tuple[ScenarioProject, ...]
    events: tuple[ScenarioEvent, ...]
    until: float
    base_dir: Path

    def resolve(self, root: str) -> Path:
        return (self.base_dir / root).resolve()


def load_scenario(path: str | Path) -> Scenario:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ScenarioError(f"cannot read scenario {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ScenarioError("scenario root must be a JSON object")

    projects = []
    for item in data.get("projects", []):
        if not isinstance(item, dict) or "root" not in item:
            raise ScenarioError("each project needs a 'root'")
        projects.append(ScenarioProject(item["root"], item.get("config")))
    if not projects:
        raise ScenarioError("scenario declares no projects")
    declared = {p.root for p in projects}

    events = []
    last_t = None
    for item in data.get("events", []):
        kind = item.get("type")
        if kind not in ("paste", "edit"):
            raise ScenarioError(f"unknown event type {kind!r}")
        t = item.get("t")
        if not isinstance(t, (int, float)) or isinstance(t, bool):
            raise ScenarioError("every event needs a numeric 't'")
        if last_t is not None and t < last_t:
            raise ScenarioError("event timestamps must be non-decreasing")
        last_t = t
        root = item.get("root")
        if root not in declared:
            raise ScenarioError(f"event references undeclared project {root!r}")
        if kind == "paste":
            if not isinstance(item.get("line"), int) or "fragment" not in item:
                raise ScenarioError("paste events need 'file', 'line', and 'fragment'")
            events.append(
                ScenarioEvent("paste", t, root, item["file"], line=item["line"],
                              fragment=item["fragment"])
            )
        else:
            events.append(
                ScenarioEvent("edit", t, root, item["file"], content=item.get("content"))
            )

    until = data.get("until", last_t if last_t is not None else 0)
    if not isinstance(until, (int, float)) or isinstance(until, bool):
        raise ScenarioError("'until' must be numeric")
    return Scenario(tuple(projects), tuple(events), until, path.parent)


def run_scenario(scenario: Scenario) -> list[dict]:
    """Replay all events; the log holds recommendations and drops in order."""
    workspace = Workspace()
    sessions = []
    for project in scenario.projects:
        config = scenario.base_dir / project.config if project.config else None
        sessions.append(
            workspace.open(scenario.resolve(project.root), config, declared_root=project.root)
        )

    log: list[dict] = []

    def drain(limit: float) -> None:
        while True:
            dues = [s.queue.next_due() for s in sessions]
            candidates = [d for d in dues if d is not None and d <= limit]
            if not candidates:
                return
            now = min(candidates)
            for session in sessions:
                for outcome in tick(session, now):
                    log.append(outcome_to_dict(outcome))

    for item in scenario.events:
        drain(item.t)
        session = workspace.sessions[scenario.resolve(item.root)]
        if item.kind == "paste":
            event = PasteEvent(item.root, item.file, item.line, item.fragment, item.t)
            drop = enqueue_paste(session, event)
            if drop is not None:
                log.append(outcome_to_dict(drop))
        else:
            session.apply_edit(item.file, item.content)
    drain(scenario.until)
    return log


def serialize_log(log: list[dict]) -> str:
    return json.dumps({"log": log}, indent=2, sort_keys=True) + "\n"
