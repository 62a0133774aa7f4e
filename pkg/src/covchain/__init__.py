"""covchain: infection-pattern blockchain simulator.

Four subsystems wired by an orchestrator:
  - patterns: restricted regex engine (parse, compile to DFA, enumerate,
    verify) for infection patterns and their derived codes
  - ledger: block construction, merkle fingerprints, code mining, chain
    validation and persistence
  - surveillance: simulated tracking oracle over ingested contact logs
  - p2p: citizen clients with inboxes, binomial risk scoring, suspect
    detection and cluster warning exchange
"""

__version__ = "0.1.0"
