from datetime import date, timezone

import pytest

from gitbot.errors import ExtractionFailed, GitUnavailable, NotAGitRepository
from gitbot.extractor import Role, extract_commits, group_messages

from .conftest import add_commit, init_repo

THREE_COMMITS = [
    ("alice", "first commit", "2021-01-01T09:00:00+00:00"),
    ("bob", "second commit", "2021-02-01T09:00:00+00:00"),
    ("alice", "third commit", "2021-03-01T09:00:00+00:00"),
]


class TestExtractCommits:
    def test_extracts_all_commits_in_log_order(self, make_repo):
        repo = make_repo(THREE_COMMITS)
        commits = extract_commits(repo)
        assert len(commits) == 3
        # git log is newest first
        assert [c.message.strip() for c in commits] == [
            "third commit",
            "second commit",
            "first commit",
        ]
        assert all(c.hash for c in commits)
        assert len({c.hash for c in commits}) == 3
        assert all(c.timestamp.tzinfo == timezone.utc for c in commits)

    def test_start_date_after_everything_yields_empty(self, make_repo):
        repo = make_repo(THREE_COMMITS)
        assert extract_commits(repo, start_date=date(2022, 1, 1)) == []

    def test_start_date_filters_older_commits(self, make_repo):
        repo = make_repo(THREE_COMMITS)
        commits = extract_commits(repo, start_date=date(2021, 1, 15))
        assert [c.author_name for c in commits] == ["alice", "bob"]

    def test_start_date_monotone(self, make_repo):
        repo = make_repo(THREE_COMMITS)
        earlier = {c.hash for c in extract_commits(repo, start_date=date(2021, 1, 15))}
        later = {c.hash for c in extract_commits(repo, start_date=date(2021, 2, 15))}
        assert later <= earlier

    def test_extraction_idempotent(self, make_repo):
        repo = make_repo(THREE_COMMITS)
        assert extract_commits(repo) == extract_commits(repo)

    def test_message_with_delimiter_like_content_roundtrips(self, tmp_path):
        repo = init_repo(tmp_path / "tricky")
        message = (
            "subject line with %x00 literal and | pipes\n"
            "\n"
            "body, with \"quotes\", commas, tabs\t...\n"
            "trailing blank lines keep\n\n\n"
        )
        message_file = tmp_path / "msg.txt"
        message_file.write_text(message, encoding="utf-8")
        add_commit(repo, "alice", None, message_file=message_file)
        commits = extract_commits(repo)
        assert commits[0].message == message

    def test_role_selects_timestamp_source(self, tmp_path):
        repo = init_repo(tmp_path / "roles")
        add_commit(
            repo,
            "alice",
            "authored early, committed late",
            date="2021-01-01T00:00:00+00:00",
            committer_date="2021-06-01T00:00:00+00:00",
        )
        by_author = extract_commits(repo, role=Role.AUTHOR)
        by_committer = extract_commits(repo, role=Role.COMMITTER)
        assert by_author[0].timestamp.month == 1
        assert by_committer[0].timestamp.month == 6

    def test_empty_repository_yields_no_commits(self, tmp_path):
        repo = init_repo(tmp_path / "empty")
        assert extract_commits(repo) == []

    def test_not_a_repository(self, tmp_path):
        plain_dir = tmp_path / "plain"
        plain_dir.mkdir()
        with pytest.raises(NotAGitRepository):
            extract_commits(plain_dir)

    def test_missing_path_raises(self, tmp_path):
        with pytest.raises((NotAGitRepository, ExtractionFailed)):
            extract_commits(tmp_path / "missing")

    def test_git_unavailable(self, make_repo, monkeypatch, tmp_path):
        repo = make_repo(THREE_COMMITS[:1])
        empty = tmp_path / "emptybin"
        empty.mkdir()
        monkeypatch.setenv("PATH", str(empty))
        with pytest.raises(GitUnavailable):
            extract_commits(repo)


class TestGroupMessages:
    def test_counts_per_author(self, make_repo):
        commits = [("alice", f"msg {i}", f"2021-01-{i+1:02d}T09:00:00+00:00") for i in range(5)]
        commits += [("bob", f"note {i}", f"2021-02-{i+1:02d}T09:00:00+00:00") for i in range(2)]
        repo = make_repo(commits)
        groups = group_messages(extract_commits(repo))
        assert set(groups) == {"alice", "bob"}
        assert len(groups["alice"]) == 5
        assert len(groups["bob"]) == 2

    def test_group_by_committer(self, make_repo):
        repo = make_repo(THREE_COMMITS)
        extracted = extract_commits(repo, role=Role.COMMITTER)
        groups = group_messages(extracted, role=Role.COMMITTER)
        assert set(groups) == {"ci-runner"}  # conftest commits as ci-runner
        assert len(groups["ci-runner"]) == 3

    def test_empty_input(self):
        assert group_messages([]) == {}

    def test_corpus_order_most_recent_first(self, make_repo):
        commits = [("alice", f"msg {i}", f"2021-01-{i+1:02d}T09:00:00+00:00") for i in range(4)]
        repo = make_repo(commits)
        groups = group_messages(extract_commits(repo))
        messages = [m.strip() for m in groups["alice"].messages]
        assert messages == ["msg 3", "msg 2", "msg 1", "msg 0"]
        stamps = groups["alice"].timestamps
        assert stamps == sorted(stamps, reverse=True)

    def test_corpus_sizes_sum_to_commit_count(self, make_repo):
        repo = make_repo(THREE_COMMITS)
        commits = extract_commits(repo)
        groups = group_messages(commits)
        assert sum(len(c) for c in groups.values()) == len(commits)
