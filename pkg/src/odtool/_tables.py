"""Sign/letter layouts of the block matrices used by the 16n and 24n constructions.

Each table is one block row per line.  A token is ``0`` (zero block) or an
optionally negated letter naming an input block; ``A`` stands for A_1 in N_1
and A_2 in N_2.  These strings are the only copy of the layouts; the Gram
identities checked in the test suite guard the transcription.
"""

M1_16 = """
     0  D  B  C  0  0  0  0
    -D  0 -C  B  0  0  0  0
     B -C  0  D  0  0  0  0
     C  B -D  0  0  0  0  0
     0  0  0  0  0 -D  B  C
     0  0  0  0  D  0 -C  B
     0  0  0  0  B -C  0 -D
     0  0  0  0  C  B  D  0
"""

M2_16 = """
     0  G  E  F  0  0  0  0
    -G  0  F -E  0  0  0  0
     E  F  0 -G  0  0  0  0
     F -E  G  0  0  0  0  0
     0  0  0  0  0 -E  F  G
     0  0  0  0  E  0  G -F
     0  0  0  0  F  G  0  E
     0  0  0  0  G -F -E  0
"""

N_16 = """
     A  0  0  0  A -A  A  A
     0  A  0  0  A  A  A -A
     0  0 -A  0 -A -A  A -A
     0  0  0 -A -A  A  A  A
    -A -A -A -A  A  0  0  0
     A -A -A  A  0  A  0  0
     A  A -A -A  0  0 -A  0
     A -A  A -A  0  0  0 -A
"""

M1_24 = """
     B  C  D  0  0  0  0  0  0  0  0  0
    -C  B  0 -D  0  0  0  0  0  0  0  0
    -D  0  B  C  0  0  0  0  0  0  0  0
     0  D -C  B  0  0  0  0  0  0  0  0
     0  0  0  0  B  C  D  0  0  0  0  0
     0  0  0  0 -C  B  0 -D  0  0  0  0
     0  0  0  0 -D  0  B  C  0  0  0  0
     0  0  0  0  0  D -C  B  0  0  0  0
     0  0  0  0  0  0  0  0  B  C  D  0
     0  0  0  0  0  0  0  0 -C  B  0 -D
     0  0  0  0  0  0  0  0 -D  0  B  C
     0  0  0  0  0  0  0  0  0  D -C  B
"""

M2_24 = """
     E  F  G  0  0  0  0  0  0  0  0  0
     F -E  0 -G  0  0  0  0  0  0  0  0
     G  0 -E  F  0  0  0  0  0  0  0  0
     0 -G  F  E  0  0  0  0  0  0  0  0
     0  0  0  0  F  G  E  0  0  0  0  0
     0  0  0  0  G -F  0 -E  0  0  0  0
     0  0  0  0  E  0 -F  G  0  0  0  0
     0  0  0  0  0 -E  G  F  0  0  0  0
     0  0  0  0  0  0  0  0  G -E -F  0
     0  0  0  0  0  0  0  0 -E -G  0  F
     0  0  0  0  0  0  0  0 -F  0 -G -E
     0  0  0  0  0  0  0  0  0  F -E  G
"""

N_24 = """
     0  0  0 -A  A  A  A -A  A -A  A -A
     0  0 -A  0  A -A -A -A -A -A -A -A
     0  A  0  0  A  A -A  A  A  A -A -A
     A  0  0  0  A -A  A  A  A -A -A  A
    -A -A -A -A  0  0  0 -A  A  A -A  A
    -A  A -A  A  0  0 -A  0  A -A  A  A
    -A  A  A -A  0  A  0  0 -A -A -A  A
     A  A -A -A  A  0  0  0 -A  A  A  A
    -A  A -A -A -A -A  A  A  0  0  0 -A
     A  A -A  A -A  A  A -A  0  0 -A  0
    -A  A  A  A  A -A  A -A  0  A  0  0
     A  A  A -A -A -A -A -A  A  0  0  0
"""
