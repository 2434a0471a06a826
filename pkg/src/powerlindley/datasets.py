"""Frequency tables shipped with the package.

Depth of Inheritance Tree (DIT) and Number Of Children (NOC) percentage
frequencies for the system category of an object-oriented metrics survey.
"""

DIT_SYSTEM_CSV = """\
value,frequency
0,35.45
1,54.27
2,7.94
3,1.50
4,0.77
5,0.07
"""

NOC_SYSTEM_CSV = """\
value,frequency
0,92.21
1,3.73
2,1.99
3,0.64
4,0.32
5,0.21
6,0.19
7,0.09
8,0.06
9,0.11
10,0.09
11,0.02
12,0.11
13,0.04
14,0.04
15,0.04
17,0.02
18,0.02
19,0.04
29,0.02
"""

EMBEDDED = {
    "dit-system": DIT_SYSTEM_CSV,
    "noc-system": NOC_SYSTEM_CSV,
}
