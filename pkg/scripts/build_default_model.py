#!/usr/bin/env python3
"""Regenerate the shipped default model.

Trains the retained configuration (entropy criterion, 20 trees, depth
8) on a deterministic synthetic corpus, evaluates it on the held-out
part, and writes src/gitbot/data/default_model.json. Rerunning always
yields the same bytes.
"""

from pathlib import Path

from gitbot.dataset import featurize
from gitbot.evaluation import evaluate_pretrained, format_report, stratified_split
from gitbot.forest import train_forest
from gitbot.model_io import save_model
from gitbot.synthesis import synthetic_dataset

SEED = 2020
OUTPUT = Path(__file__).resolve().parent.parent / "src" / "gitbot" / "data" / "default_model.json"


def main():
    dataset = synthetic_dataset(n_bots=300, n_humans=300, seed=SEED)
    train_part, test_part = stratified_split(dataset, 0.6, seed=SEED)
    model = train_forest(featurize(train_part), n_estimators=20, max_depth=8, seed=SEED)
    save_model(model, OUTPUT)
    print(f"model written to {OUTPUT}")
    print(format_report(evaluate_pretrained(model, test_part)))


if __name__ == "__main__":
    main()
