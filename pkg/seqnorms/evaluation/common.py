"""Common classes and functions shared by the seqnorms scripts."""
import json
import logging
import os
import site
import sys
import time


# Constants ############################################################

# Path to the seqnorms directory in the users home folder
site.getuserbase()
SEQNORMS_DIR = os.path.join(site.USER_BASE, 'seqnorms')
LOG_DIR = os.path.join(SEQNORMS_DIR, 'logs')

LOG_FORMAT = ' %(asctime)s - %(levelname)s - %(message)s'


# Classes ##############################################################

class Log:
    """Wrapper for logging.

    Attributes:
        path (str): The log file, or None when logging to stderr only.
        verbose (bool): Whether info messages are echoed to stderr.
    """

    def __init__(self, dir_path=LOG_DIR, file_prefix="log", verbose=False):
        """Sets up logging to a file in a given directory.

        If the directory does not exist messages go to stderr only.

        Args:
            dir_path (str): A path to the directory to store the log
                file in.
            file_prefix (str): All logs will be given unique names based
                on time. The prefix is added to identify what the log
                is for. Default is 'log'.
            verbose (bool): Echo info messages to stderr.
        """
        self.verbose = verbose
        self.path = None
        if dir_path is not None and os.path.isdir(dir_path):
            self.path = '{}/{}_{}.log'.format(dir_path, file_prefix,
                                               time.time())
            logging.basicConfig(filename=self.path, level=logging.INFO,
                                format=LOG_FORMAT)
        else:
            logging.basicConfig(stream=sys.stderr, level=logging.WARNING,
                                format=LOG_FORMAT)

    def error(self, message, error):
        """Logs a message and error and echoes them to stderr.

        Args:
            message (str): A message to include with the error text.
            error (Exception): an Exception object.
        """
        print('*** Error ***', message + ':', error, file=sys.stderr)
        if self.path is not None:
            logging.error('%s: %s', message, str(error))

    def info(self, message):
        """Logs a given message."""
        if self.verbose:
            print(message, file=sys.stderr)
        logging.info(message)


# Functions ############################################################

def find_time(sec):
    """Finds the time represented by a given number of seconds.

    Args:
        sec (float): The number of seconds.

    Returns:
        str: A string of the time passed. Ie) 10h40m20.00s
    """
    minutes, seconds = divmod(sec, 60)
    hours, minutes = divmod(minutes, 60)
    return "{:.0f}h{:.0f}m{:.2f}s".format(hours, minutes, seconds)


def remove_old_logs(log_dir, max_to_keep):
    """Removes the oldest logs until at most max_to_keep remain.

    Args:
        log_dir (str): Full path to the log dir.
        max_to_keep (int): The number of logs to keep.
    """
    if not os.path.isdir(log_dir):
        return
    contents = sorted((name for name in os.listdir(log_dir)
                       if os.path.isfile(os.path.join(log_dir, name))),
                      key=lambda name: os.path.getmtime(
                          os.path.join(log_dir, name)),
                      reverse=True)
    for name in contents[max_to_keep:]:
        os.remove(os.path.join(log_dir, name))


def get_json_data(path):
    """Loads JSON data from a given path and returns it."""
    with open(path) as file:
        return json.load(file)

