"""Extract commit records from a local git repository via `git log`.

Fields are separated by a NUL byte and records end with NUL-NUL, so
any printable message content survives parsing (git forbids NUL inside
commit messages). Output is decoded with surrogateescape, which keeps
messages byte-exact even when they are not valid UTF-8.
"""

import enum
import subprocess
from dataclasses import dataclass
from datetime import date, datetime, timezone

from .errors import ExtractionFailed, GitUnavailable, NotAGitRepository
from .features import MessageCorpus


class Role(enum.Enum):
    """Which commit participant a contributor name is taken from."""

    AUTHOR = "author"
    COMMITTER = "committer"


@dataclass(frozen=True)
class RawCommit:
    hash: str
    author_name: str
    committer_name: str
    timestamp: datetime
    message: str

    def name_for(self, role: Role) -> str:
        return self.author_name if role is Role.AUTHOR else self.committer_name


_FIELDS_PER_RECORD = 6  # hash, author, committer, date, body, terminator gap


def _pretty_format(role: Role) -> str:
    date_token = "%aI" if role is Role.AUTHOR else "%cI"
    return f"--pretty=format:%H%x00%an%x00%cn%x00{date_token}%x00%B%x00%x00"


def _parse_log(stdout: str) -> list[tuple[str, str, str, str, str]]:
    if not stdout:
        return []
    tokens = stdout.split("\x00")
    # each record contributes 6 tokens; one trailing empty token remains
    if len(tokens) % _FIELDS_PER_RECORD != 1 or tokens[-1] != "":
        raise ExtractionFailed("unexpected git log field layout")
    records = []
    for base in range(0, len(tokens) - 1, _FIELDS_PER_RECORD):
        commit_hash = tokens[base]
        if base > 0:
            # records are separated by a newline that fuses onto the hash
            commit_hash = commit_hash.removeprefix("\n")
        if tokens[base + 5] != "":
            raise ExtractionFailed("unexpected git log record terminator")
        records.append(
            (
                commit_hash,
                tokens[base + 1],
                tokens[base + 2],
                tokens[base + 3],
                tokens[base + 4],
            )
        )
    return records


def extract_commits(
    repo_path,
    role: Role = Role.AUTHOR,
    start_date: date | None = None,
    include_merges: bool = True,
) -> list[RawCommit]:
    """All commits reachable from HEAD, newest first.

    When start_date is given, only commits whose timestamp (for the
    selected role) falls on or after that date are returned. Merge
    commits are included unless include_merges is False.
    """
    cmd = ["git", "-C", str(repo_path), "log", _pretty_format(role)]
    if not include_merges:
        cmd.append("--no-merges")
    if start_date is not None:
        cmd.append(f"--since={start_date.isoformat()}")
    try:
        proc = subprocess.run(cmd, capture_output=True)
    except FileNotFoundError as exc:
        raise GitUnavailable("git executable not found on PATH") from exc

    stderr = proc.stderr.decode("utf-8", "replace")
    if proc.returncode != 0:
        low = stderr.lower()
        if "not a git repository" in low:
            raise NotAGitRepository(f"{repo_path} is not a git repository")
        if "does not have any commits" in low or "bad default revision" in low:
            return []  # freshly initialized repository
        detail = stderr.strip().splitlines()[0] if stderr.strip() else ""
        raise ExtractionFailed(
            f"git log failed with exit code {proc.returncode}: {detail}", stderr=stderr
        )

    stdout = proc.stdout.decode("utf-8", "surrogateescape")
    cutoff = None
    if start_date is not None:
        cutoff = datetime(
            start_date.year, start_date.month, start_date.day, tzinfo=timezone.utc
        )

    commits = []
    for commit_hash, author, committer, iso_date, body in _parse_log(stdout):
        timestamp = datetime.fromisoformat(iso_date).astimezone(timezone.utc)
        if cutoff is not None and timestamp < cutoff:
            # --since filters on commit date; enforce the role date here
            continue
        commits.append(
            RawCommit(
                hash=commit_hash,
                author_name=author,
                committer_name=committer,
                timestamp=timestamp,
                message=body,
            )
        )
    return commits


def group_messages(
    commits: list[RawCommit], role: Role = Role.AUTHOR
) -> dict[str, MessageCorpus]:
    """Group commit messages per contributor name for the given role.

    Input commits are expected newest first (as extract_commits returns
    them), so each corpus ends up most recent first.
    """
    messages: dict[str, list[str]] = {}
    timestamps: dict[str, list[datetime]] = {}
    for commit in commits:
        name = commit.name_for(role)
        messages.setdefault(name, []).append(commit.message)
        timestamps.setdefault(name, []).append(commit.timestamp)
    return {
        name: MessageCorpus(
            contributor=name, messages=messages[name], timestamps=timestamps[name]
        )
        for name in messages
    }
