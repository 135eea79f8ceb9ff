"""readloop: closed-loop simulation of adaptive reading instruction.

Simulated learners encode teaching events from passages into explicit
memory, answer multiple-choice items from that memory alone, and a
BKT-driven tutor adapts subsequent reading configurations. Includes the
ontology Atlas gateway backing the browser workspace.
"""

__version__ = "0.1.0"
