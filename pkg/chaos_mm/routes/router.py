# Standard Imports
from collections.abc import Callable
from pathlib import Path
from typing import Any, Literal

# Third Party Imports
from pydantic import BaseModel, Field

# My Imports
from ..models import RunConfig


class RunContext(BaseModel):
    """What the command line resolved around the config: where to write and how wide to run."""

    out_dir: Path
    workers: int = Field(default=1, ge=1)
    svg: bool = False


class CommandResult(BaseModel):
    status: Literal["ok", "partial", "failed"] = "ok"
    files: list[str] = Field(default_factory=list)
    details: dict[str, Any] = Field(default_factory=dict)


Handler = Callable[[RunConfig, RunContext], CommandResult]


class CommandRouter:
    """Maps command names to handlers; routers compose with `include_router`."""

    def __init__(self) -> None:
        self.handlers: dict[str, Handler] = {}

    def command(self, name: str) -> Callable[[Handler], Handler]:
        def register(handler: Handler) -> Handler:
            if name in self.handlers:
                raise ValueError(f"command `{name}` is already registered")
            self.handlers[name] = handler
            return handler

        return register

    def include_router(self, other: "CommandRouter") -> None:
        for name, handler in other.handlers.items():
            self.command(name)(handler)

    @property
    def names(self) -> list[str]:
        return sorted(self.handlers)

    def dispatch(self, name: str, config: RunConfig, context: RunContext) -> CommandResult:
        return self.handlers[name](config, context)


def wants_svg(config: RunConfig, context: RunContext) -> bool:
    return context.svg or "svg" in config.output.formats


def overall_status(n_ok: int, n_total: int) -> Literal["ok", "partial", "failed"]:
    if n_total > 0 and n_ok == 0:
        return "failed"
    if n_ok < n_total:
        return "partial"
    return "ok"
